#include "skg/classify/train.hpp"

#include <numeric>

#include "skg/classify/losses.hpp"
#include "skg/common/error.hpp"

namespace skg::classify {
namespace {

// Pushes d loss / d z back through z = E^T x + e.
void backprop_embedding(const FeatureVector& x, const Eigen::VectorXd& dz, ModelGradient& g) {
  g.encoder_bias += dz;
  for (const auto& [idx, w] : x.entries) g.encoder.row(idx) += w * dz.transpose();
}

}  // namespace

ModelGradient ModelGradient::zeros_like(const DisciplineModel& m) {
  return {Eigen::MatrixXd::Zero(m.encoder.rows(), m.encoder.cols()),
          Eigen::VectorXd::Zero(m.encoder_bias.size()),
          Eigen::MatrixXd::Zero(m.classifier.rows(), m.classifier.cols()),
          Eigen::VectorXd::Zero(m.classifier_bias.size())};
}

Eigen::VectorXd label_vector(const std::vector<std::size_t>& labels) {
  Eigen::VectorXd y = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(kDisciplineCount));
  for (const auto l : labels) {
    if (l >= kDisciplineCount) throw Error("label index out of range: " + std::to_string(l));
    y[static_cast<Eigen::Index>(l)] = 1.0;
  }
  return y;
}

BatchLoss batch_objective(const DisciplineModel& model, std::span<const BatchItem> batch,
                          bool contrastive, ModelGradient* grad) {
  if (batch.empty()) throw Error("batch_objective: empty batch");
  const double inv_batch = 1.0 / static_cast<double>(batch.size());
  BatchLoss loss;

  for (const auto& item : batch) {
    const Eigen::VectorXd z = model.embed(item.full);
    const Eigen::VectorXd logits = model.classifier.transpose() * z + model.classifier_bias;
    const auto bce = bce_with_logits(logits, item.labels);
    loss.bce += bce.loss * inv_batch;
    if (grad) {
      const Eigen::VectorXd dlogits = bce.gradient * inv_batch;
      grad->classifier += z * dlogits.transpose();
      grad->classifier_bias += dlogits;
      backprop_embedding(item.full, model.classifier * dlogits, *grad);
    }
  }

  if (contrastive) {
    std::vector<AugmentedPair> pairs;
    pairs.reserve(batch.size());
    for (const auto& item : batch) {
      pairs.push_back({model.embed(item.view_one), model.embed(item.view_two)});
    }
    const auto cl = info_nce_loss(pairs, model.temperature);
    loss.contrastive = cl.loss;
    if (grad) {
      for (std::size_t i = 0; i < batch.size(); ++i) {
        backprop_embedding(batch[i].view_one, cl.grad_first[i], *grad);
        backprop_embedding(batch[i].view_two, cl.grad_second[i], *grad);
      }
    }
  }
  return loss;
}

DisciplineModel train(const std::vector<LabeledDocument>& dataset, const TrainConfig& config,
                      TrainReport* report) {
  if (dataset.empty()) throw Error("train: empty dataset");
  if (config.batch_size == 0) throw Error("train: batch size must be positive");
  std::vector<std::vector<std::string>> docs;
  for (const auto& d : dataset) {
    if (d.labels.empty()) throw Error("train: document " + d.paper_id + " has no label");
    if (d.tokens.empty()) throw Error("train: document " + d.paper_id + " has no tokens");
    docs.push_back(d.tokens);
  }
  std::vector<std::string> warnings;
  Vocabulary vocab = build_vocabulary(docs, config.min_df, config.max_vocab, &warnings);
  DisciplineModel model =
      init_model(std::move(vocab), config.dim, config.temperature, mix_seed(config.seed, 0));
  if (report) report->warnings = warnings;

  std::vector<FeatureVector> full;
  std::vector<Eigen::VectorXd> labels;
  for (const auto& d : dataset) {
    full.push_back(featurize(d.tokens, model.vocab));
    labels.push_back(label_vector(d.labels));
  }

  Rng order_rng(mix_seed(config.seed, 1));
  Rng augment_rng(mix_seed(config.seed, 2));
  std::vector<std::size_t> order(dataset.size());
  std::iota(order.begin(), order.end(), 0);

  for (std::size_t epoch = 0; epoch < config.epochs; ++epoch) {
    order_rng.shuffle(order);
    EpochStats stats;
    std::size_t batches = 0;
    for (std::size_t start = 0; start < order.size(); start += config.batch_size) {
      const std::size_t end = std::min(order.size(), start + config.batch_size);
      std::vector<BatchItem> batch;
      batch.reserve(end - start);
      for (std::size_t k = start; k < end; ++k) {
        const std::size_t i = order[k];
        BatchItem item{full[i], {}, {}, labels[i]};
        if (config.contrastive) {
          item.view_one = featurize(augment(dataset[i].tokens, augment_rng, config.drop_prob), model.vocab);
          item.view_two = featurize(augment(dataset[i].tokens, augment_rng, config.drop_prob), model.vocab);
        }
        batch.push_back(std::move(item));
      }
      ModelGradient g = ModelGradient::zeros_like(model);
      const BatchLoss loss = batch_objective(model, batch, config.contrastive, &g);
      model.encoder -= config.learning_rate * g.encoder;
      model.encoder_bias -= config.learning_rate * g.encoder_bias;
      model.classifier -= config.learning_rate * g.classifier;
      model.classifier_bias -= config.learning_rate * g.classifier_bias;
      stats.bce += loss.bce;
      stats.contrastive += loss.contrastive;
      ++batches;
    }
    stats.bce /= static_cast<double>(batches);
    stats.contrastive /= static_cast<double>(batches);
    if (report) report->epochs.push_back(stats);
  }
  return model;
}

}  // namespace skg::classify
