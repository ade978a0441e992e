#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace skg::extract {

/// NDCG@k of binary labels listed in predicted order; 1 for a list with no
/// positive label. Throws if k == 0.
double ndcg(std::span<const int> ranked_labels, std::size_t k);

/// 0-based rank of every item when sorted by score descending, ties by index.
std::vector<std::size_t> rank_positions(std::span<const double> scores);

/// Labels reordered by descending score (ties by index).
std::vector<int> labels_by_score(std::span<const double> scores, std::span<const int> labels);

}  // namespace skg::extract
