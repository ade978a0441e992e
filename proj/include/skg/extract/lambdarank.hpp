#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace skg::extract {

/// A preference: item i (label 1) should outrank item j (label 0).
struct RankPair {
  std::size_t i = 0;
  std::size_t j = 0;
};

std::vector<RankPair> preference_pairs(std::span<const int> labels);

/// |NDCG@k change| from swapping items i and j in the ordering given by
/// `ranks` (0-based positions). k larger than the list acts as the list
/// length.
double delta_ndcg(std::span<const int> labels, std::span<const std::size_t> ranks,
                  std::size_t i, std::size_t j, std::size_t k);

struct LambdaLoss {
  double loss = 0.0;
  std::vector<double> grad;  // d loss / d score, per item
};

/// Sum over pairs of ln(1 + exp(-sigma (s_i - s_j))) * |dNDCG_ij|, with the
/// swap weight taken from the current score ordering and held constant in
/// the gradient. Throws on a pair whose labels are not (1, 0).
LambdaLoss lambdarank_loss(std::span<const RankPair> pairs, std::span<const double> scores,
                           std::span<const int> labels, std::size_t k, double sigma);

}  // namespace skg::extract
