#include "skg/classify/losses.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "skg/common/error.hpp"

namespace skg::classify {
namespace {

void check_binary(const Eigen::VectorXd& labels) {
  for (Eigen::Index k = 0; k < labels.size(); ++k) {
    if (labels[k] != 0.0 && labels[k] != 1.0) throw Error("labels must be 0 or 1");
  }
}

}  // namespace

double bce_loss(const Eigen::VectorXd& probabilities, const Eigen::VectorXd& labels) {
  if (probabilities.size() != labels.size() || labels.size() == 0) {
    throw Error("bce_loss: size mismatch");
  }
  check_binary(labels);
  double total = 0.0;
  for (Eigen::Index k = 0; k < labels.size(); ++k) {
    const double x = std::clamp(probabilities[k], kProbEpsilon, 1.0 - kProbEpsilon);
    total += labels[k] * std::log(x) + (1.0 - labels[k]) * std::log1p(-x);
  }
  return -total / static_cast<double>(labels.size());
}

LossWithGradient bce_with_logits(const Eigen::VectorXd& logits, const Eigen::VectorXd& labels) {
  if (logits.size() != labels.size() || labels.size() == 0) {
    throw Error("bce_with_logits: size mismatch");
  }
  check_binary(labels);
  const double n = static_cast<double>(labels.size());
  LossWithGradient out;
  out.gradient.resize(logits.size());
  for (Eigen::Index k = 0; k < logits.size(); ++k) {
    const double l = logits[k];
    // -[y ln s(l) + (1-y) ln(1-s(l))] = softplus(l) - y l
    const double softplus = std::max(l, 0.0) + std::log1p(std::exp(-std::abs(l)));
    out.loss += softplus - labels[k] * l;
    out.gradient[k] = (sigmoid(l) - labels[k]) / n;
  }
  out.loss /= n;
  return out;
}

InfoNceResult info_nce_loss(const std::vector<AugmentedPair>& batch, double tau) {
  if (batch.empty()) throw Error("info_nce_loss: empty batch");
  if (!(tau > 0.0)) throw Error("info_nce_loss: temperature must be positive");

  // Flatten: embedding 2i is view one of document i, 2i+1 view two.
  const std::size_t m = batch.size() * 2;
  std::vector<const Eigen::VectorXd*> z(m);
  std::vector<double> norm(m);
  for (std::size_t i = 0; i < batch.size(); ++i) {
    z[2 * i] = &batch[i].first;
    z[2 * i + 1] = &batch[i].second;
  }
  const Eigen::Index dim = batch.front().first.size();
  for (std::size_t a = 0; a < m; ++a) {
    if (z[a]->size() != dim) throw Error("info_nce_loss: embedding width mismatch");
    norm[a] = z[a]->norm();
    if (!(norm[a] > 0.0)) throw Error("info_nce_loss: zero-norm embedding");
  }

  std::vector<Eigen::VectorXd> grad(m, Eigen::VectorXd::Zero(dim));
  const double inv_batch = 1.0 / static_cast<double>(batch.size());
  InfoNceResult out;
  std::vector<double> cosine(m);
  std::vector<double> weight(m);
  for (std::size_t i = 0; i < batch.size(); ++i) {
    const std::size_t anchor = 2 * i;
    const std::size_t positive = anchor + 1;
    double max_logit = -std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < m; ++j) {
      if (j == anchor) continue;
      cosine[j] = z[anchor]->dot(*z[j]) / (norm[anchor] * norm[j]);
      max_logit = std::max(max_logit, cosine[j] / tau);
    }
    double denom = 0.0;
    for (std::size_t j = 0; j < m; ++j) {
      if (j == anchor) continue;
      weight[j] = std::exp(cosine[j] / tau - max_logit);
      denom += weight[j];
    }
    out.loss += -(cosine[positive] / tau - max_logit) + std::log(denom);

    // dl/dcos_j = (softmax_j - [j == positive]) / tau
    for (std::size_t j = 0; j < m; ++j) {
      if (j == anchor) continue;
      const double coef =
          (weight[j] / denom - (j == positive ? 1.0 : 0.0)) / tau * inv_batch;
      if (coef == 0.0) continue;
      // d cos(a, b) / d a = b / (|a||b|) - cos a / |a|^2
      grad[anchor] += coef * (*z[j] / (norm[anchor] * norm[j]) -
                              cosine[j] * *z[anchor] / (norm[anchor] * norm[anchor]));
      grad[j] += coef * (*z[anchor] / (norm[anchor] * norm[j]) -
                         cosine[j] * *z[j] / (norm[j] * norm[j]));
    }
  }
  out.loss *= inv_batch;
  out.grad_first.reserve(batch.size());
  out.grad_second.reserve(batch.size());
  for (std::size_t i = 0; i < batch.size(); ++i) {
    out.grad_first.push_back(std::move(grad[2 * i]));
    out.grad_second.push_back(std::move(grad[2 * i + 1]));
  }
  return out;
}

}  // namespace skg::classify
