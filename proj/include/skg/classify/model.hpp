#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "skg/classify/disciplines.hpp"
#include "skg/classify/vocabulary.hpp"
#include "skg/common/rng.hpp"
#include "skg/common/eigen_util.hpp"

namespace skg::classify {

/// Linear tf-idf encoder followed by a linear multi-label head:
///   z = E^T x + e,  logits = C^T z + c.
struct DisciplineModel {
  Vocabulary vocab;
  Eigen::MatrixXd encoder;          // |vocab| x d
  Eigen::VectorXd encoder_bias;     // d
  Eigen::MatrixXd classifier;       // d x 22
  Eigen::VectorXd classifier_bias;  // 22
  double temperature = 0.5;

  std::size_t dim() const { return static_cast<std::size_t>(encoder_bias.size()); }

  Eigen::VectorXd embed(const FeatureVector& x) const;
  Eigen::VectorXd logits(const FeatureVector& x) const;
  Eigen::VectorXd probabilities(const FeatureVector& x) const;

  /// Versioned text format; doubles are written in hex-float so a reload is
  /// bit-identical.
  std::string serialize() const;
  static DisciplineModel deserialize(std::string_view data);
  void save(const std::filesystem::path& path) const;
  static DisciplineModel load(const std::filesystem::path& path);

};

/// Exact (bitwise-value) equality of vocabulary, parameters and temperature.
bool operator==(const DisciplineModel& a, const DisciplineModel& b);

DisciplineModel init_model(Vocabulary vocab, std::size_t dim, double temperature,
                           std::uint64_t seed);

/// Drops each token independently with probability drop_prob, always
/// keeping at least one (a uniformly chosen survivor when all are dropped).
std::vector<std::string> augment(const std::vector<std::string>& tokens, Rng& rng,
                                 double drop_prob);

struct Prediction {
  std::vector<std::size_t> labels;  // ascending
  Eigen::VectorXd probabilities;
};

/// Labels whose probability reaches the threshold; the argmax label alone if
/// none does.
Prediction labels_from_probabilities(const Eigen::VectorXd& probabilities, double threshold);

Prediction predict(std::string_view text, const DisciplineModel& model, double threshold = 0.5);

}  // namespace skg::classify
