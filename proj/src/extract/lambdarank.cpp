#include "skg/extract/lambdarank.hpp"

#include <algorithm>
#include <cmath>

#include "skg/common/error.hpp"
#include "skg/common/ranking.hpp"
#include "skg/extract/ndcg.hpp"

namespace skg::extract {
namespace {

double discount_at(std::size_t rank0, std::size_t k) {
  return rank0 < k ? rank_discount(rank0 + 1) : 0.0;
}

// ln(1 + e^x) without overflow.
double softplus(double x) { return x > 0 ? x + std::log1p(std::exp(-x)) : std::log1p(std::exp(x)); }

}  // namespace

std::vector<RankPair> preference_pairs(std::span<const int> labels) {
  std::vector<RankPair> out;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (labels[i] != 1) continue;
    for (std::size_t j = 0; j < labels.size(); ++j) {
      if (labels[j] == 0) out.push_back({i, j});
    }
  }
  return out;
}

double delta_ndcg(std::span<const int> labels, std::span<const std::size_t> ranks,
                  std::size_t i, std::size_t j, std::size_t k) {
  if (k == 0) throw Error("delta_ndcg: k must be >= 1");
  const std::size_t positives =
      static_cast<std::size_t>(std::count(labels.begin(), labels.end(), 1));
  double ideal = 0.0;
  for (std::size_t r = 0; r < std::min({positives, k, labels.size()}); ++r) {
    ideal += rank_discount(r + 1);
  }
  if (ideal == 0.0) return 0.0;
  const double gain = std::abs(static_cast<double>(labels[i] - labels[j]));
  return gain * std::abs(discount_at(ranks[i], k) - discount_at(ranks[j], k)) / ideal;
}

LambdaLoss lambdarank_loss(std::span<const RankPair> pairs, std::span<const double> scores,
                           std::span<const int> labels, std::size_t k, double sigma) {
  if (scores.size() != labels.size()) throw Error("lambdarank_loss: size mismatch");
  LambdaLoss out;
  out.grad.assign(scores.size(), 0.0);
  const auto ranks = rank_positions(scores);
  for (const auto& p : pairs) {
    if (p.i >= scores.size() || p.j >= scores.size()) throw Error("lambdarank_loss: bad index");
    if (labels[p.i] != 1 || labels[p.j] != 0) {
      throw Error("lambdarank_loss: pair must have label_i = 1 and label_j = 0");
    }
    const double weight = delta_ndcg(labels, ranks, p.i, p.j, k);
    const double margin = sigma * (scores[p.i] - scores[p.j]);
    out.loss += softplus(-margin) * weight;
    // d/ds_i softplus(-sigma (s_i - s_j)) = -sigma / (1 + e^{margin})
    const double lambda = sigma * weight / (1.0 + std::exp(margin));
    out.grad[p.i] -= lambda;
    out.grad[p.j] += lambda;
  }
  return out;
}

}  // namespace skg::extract
