#pragma once

#include <cmath>
#include <cstddef>
#include <span>

namespace skg {

/// Position discount 1/log2(rank + 1) for a 1-based rank.
inline double rank_discount(std::size_t rank) {
  return 1.0 / std::log2(static_cast<double>(rank) + 1.0);
}

/// NDCG@k of binary relevance labels listed in predicted order. A list with
/// no relevant item scores 1 (nothing could have been ranked better).
inline double ndcg_at_k(std::span<const int> ranked_labels, std::size_t k) {
  const std::size_t cutoff = std::min(k, ranked_labels.size());
  double dcg = 0.0;
  std::size_t positives = 0;
  for (std::size_t r = 0; r < ranked_labels.size(); ++r) {
    if (ranked_labels[r] <= 0) continue;
    ++positives;
    if (r < cutoff) dcg += rank_discount(r + 1);
  }
  if (positives == 0) return 1.0;
  double ideal = 0.0;
  for (std::size_t r = 0; r < std::min(positives, cutoff); ++r) ideal += rank_discount(r + 1);
  return dcg / ideal;
}

}  // namespace skg
