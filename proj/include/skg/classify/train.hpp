#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "skg/classify/losses.hpp"
#include "skg/classify/model.hpp"

namespace skg::classify {

struct LabeledDocument {
  std::string paper_id;
  std::vector<std::string> tokens;
  std::vector<std::size_t> labels;  // indices into discipline_names()
};

struct TrainConfig {
  std::size_t epochs = 40;
  double learning_rate = 0.5;
  std::size_t batch_size = 32;
  std::uint64_t seed = 7;
  std::size_t dim = 32;
  double temperature = 0.5;
  double drop_prob = 0.3;
  bool contrastive = true;
  std::size_t min_df = 1;
  std::size_t max_vocab = 50000;
};

struct EpochStats {
  double bce = 0.0;
  double contrastive = 0.0;
  double total() const { return bce + contrastive; }
};

struct TrainReport {
  std::vector<EpochStats> epochs;
  std::vector<std::string> warnings;
};

/// One training example as the objective sees it: the full document plus
/// two augmented views for the contrastive term.
struct BatchItem {
  FeatureVector full;
  FeatureVector view_one;
  FeatureVector view_two;
  Eigen::VectorXd labels;  // 0/1, length 22
};

struct ModelGradient {
  Eigen::MatrixXd encoder;
  Eigen::VectorXd encoder_bias;
  Eigen::MatrixXd classifier;
  Eigen::VectorXd classifier_bias;

  static ModelGradient zeros_like(const DisciplineModel& m);
};

struct BatchLoss {
  double bce = 0.0;
  double contrastive = 0.0;
  double total() const { return total_loss(bce, contrastive); }
};

/// Batch objective: mean BCE over the batch's full documents plus (when
/// `contrastive`) the InfoNCE loss over the view embeddings. Accumulates
/// the exact gradient into `grad` when non-null.
BatchLoss batch_objective(const DisciplineModel& model, std::span<const BatchItem> batch,
                          bool contrastive, ModelGradient* grad);

Eigen::VectorXd label_vector(const std::vector<std::size_t>& labels);

/// Mini-batch gradient descent with a fixed learning rate. Bit-deterministic
/// for a fixed config. Throws on an empty dataset or a document without a
/// positive label.
DisciplineModel train(const std::vector<LabeledDocument>& dataset, const TrainConfig& config,
                      TrainReport* report = nullptr);

}  // namespace skg::classify
