#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "skg/extract/features.hpp"

namespace skg::extract {

/// s = w2 . relu(W1 f + b1) + b2 over the four rank features.
struct RankerModel {
  Eigen::MatrixXd w1;  // h x 4
  Eigen::VectorXd b1;  // h
  Eigen::VectorXd w2;  // h
  double b2 = 0.0;
  double sigma = 1.0;  // pairwise sharpness used in training

  std::size_t hidden() const { return static_cast<std::size_t>(b1.size()); }
  double score(const RankFeatures& f) const;
  std::vector<double> score_all(std::span<const RankFeatures> fs) const;

  std::string serialize() const;
  static RankerModel deserialize(std::string_view data);
  void save(const std::filesystem::path& path) const;
  static RankerModel load(const std::filesystem::path& path);
};

bool operator==(const RankerModel& a, const RankerModel& b);

RankerModel init_ranker(std::size_t hidden, double sigma, std::uint64_t seed);

/// One paper's annotated candidate list.
struct RankGroup {
  std::string paper_id;
  std::vector<RankFeatures> features;
  std::vector<int> labels;
};

struct RankerGradient {
  Eigen::MatrixXd w1;
  Eigen::VectorXd b1;
  Eigen::VectorXd w2;
  double b2 = 0.0;
};

/// Total LambdaRank loss summed over groups, with its exact parameter
/// gradient (swap weights held at their current values) when `grad` is set.
double ranker_objective(const RankerModel& model, std::span<const RankGroup> groups,
                        std::size_t k, RankerGradient* grad);

struct RankerConfig {
  std::size_t epochs = 200;
  double learning_rate = 0.05;
  std::size_t hidden = 16;
  double sigma = 1.0;
  std::size_t k = 10;
  std::uint64_t seed = 11;
};

struct RankerReport {
  std::vector<double> epoch_loss;
  std::vector<std::string> warnings;
  std::size_t groups_used = 0;
};

/// Per-group gradient descent over shuffled groups. Features are
/// standardised for training and the scaling is folded back into W1 and b1,
/// so the returned model scores raw features. Groups lacking a positive or
/// a negative are skipped with a warning.
RankerModel train_ranker(const std::vector<RankGroup>& groups, const RankerConfig& config,
                         RankerReport* report = nullptr);

/// Mean NDCG@k of the model's ordering over groups.
double mean_ndcg(const RankerModel& model, std::span<const RankGroup> groups, std::size_t k);

}  // namespace skg::extract
