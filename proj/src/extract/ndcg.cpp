#include "skg/extract/ndcg.hpp"

#include <algorithm>
#include <numeric>

#include "skg/common/error.hpp"
#include "skg/common/ranking.hpp"

namespace skg::extract {

double ndcg(std::span<const int> ranked_labels, std::size_t k) {
  if (k == 0) throw Error("ndcg: k must be >= 1");
  return ndcg_at_k(ranked_labels, k);
}

std::vector<std::size_t> rank_positions(std::span<const double> scores) {
  std::vector<std::size_t> order(scores.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return scores[a] > scores[b]; });
  std::vector<std::size_t> rank(scores.size());
  for (std::size_t r = 0; r < order.size(); ++r) rank[order[r]] = r;
  return rank;
}

std::vector<int> labels_by_score(std::span<const double> scores, std::span<const int> labels) {
  if (scores.size() != labels.size()) throw Error("labels_by_score: size mismatch");
  const auto rank = rank_positions(scores);
  std::vector<int> out(labels.size());
  for (std::size_t i = 0; i < labels.size(); ++i) out[rank[i]] = labels[i];
  return out;
}

}  // namespace skg::extract
