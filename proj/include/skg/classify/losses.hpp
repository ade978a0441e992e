#pragma once

#include <Eigen/Dense>
#include <vector>

namespace skg::classify {

/// Probabilities are clamped to [kProbEpsilon, 1 - kProbEpsilon] before logs.
inline constexpr double kProbEpsilon = 1e-12;

/// Mean binary cross-entropy over labels, on probabilities:
///   -mean_k [ y_k ln x_k + (1 - y_k) ln(1 - x_k) ]
/// Throws if any y_k is not 0 or 1.
double bce_loss(const Eigen::VectorXd& probabilities, const Eigen::VectorXd& labels);

struct LossWithGradient {
  double loss = 0.0;
  Eigen::VectorXd gradient;
};

/// Same loss evaluated from logits in the overflow-safe softplus form;
/// gradient is with respect to the logits: (sigmoid(l) - y) / K.
LossWithGradient bce_with_logits(const Eigen::VectorXd& logits, const Eigen::VectorXd& labels);

/// Two embeddings of independently augmented views of one document.
struct AugmentedPair {
  Eigen::VectorXd first;
  Eigen::VectorXd second;
};

struct InfoNceResult {
  double loss = 0.0;
  std::vector<Eigen::VectorXd> grad_first;   // d loss / d pair.first
  std::vector<Eigen::VectorXd> grad_second;  // d loss / d pair.second
};

/// Contrastive loss with cosine similarity and temperature tau. For anchor
/// z_i1 the positive is z_i2 and the denominator runs over every embedding
/// in the batch (both views of every document) except the anchor itself:
///
///   l_i = -ln  exp(cos(z_i1, z_i2)/tau) / sum_{j != i1} exp(cos(z_i1, z_j)/tau)
///
/// The batch loss is the mean of l_i. Throws on an empty batch, tau <= 0 or
/// a zero-norm embedding.
InfoNceResult info_nce_loss(const std::vector<AugmentedPair>& batch, double tau);

/// Unweighted sum of the two objectives.
inline double total_loss(double bce, double contrastive) { return bce + contrastive; }

inline double sigmoid(double x) {
  return x >= 0.0 ? 1.0 / (1.0 + std::exp(-x)) : std::exp(x) / (1.0 + std::exp(x));
}

}  // namespace skg::classify
