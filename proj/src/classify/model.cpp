#include "skg/classify/model.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include "skg/classify/losses.hpp"
#include "skg/common/error.hpp"
#include "skg/common/hexfloat.hpp"
#include "skg/common/io.hpp"
#include "skg/common/text.hpp"

namespace skg::classify {
namespace {

constexpr std::string_view kMagic = "skg-discipline-model";
constexpr int kFormatVersion = 1;

}  // namespace

bool operator==(const DisciplineModel& a, const DisciplineModel& b) {
  return a.vocab == b.vocab && a.temperature == b.temperature &&
         same_values(a.encoder, b.encoder) && same_values(a.encoder_bias, b.encoder_bias) &&
         same_values(a.classifier, b.classifier) &&
         same_values(a.classifier_bias, b.classifier_bias);
}

Eigen::VectorXd DisciplineModel::embed(const FeatureVector& x) const {
  Eigen::VectorXd z = encoder_bias;
  for (const auto& [idx, w] : x.entries) z += w * encoder.row(idx).transpose();
  return z;
}

Eigen::VectorXd DisciplineModel::logits(const FeatureVector& x) const {
  return classifier.transpose() * embed(x) + classifier_bias;
}

Eigen::VectorXd DisciplineModel::probabilities(const FeatureVector& x) const {
  return logits(x).unaryExpr([](double l) { return sigmoid(l); });
}

std::string DisciplineModel::serialize() const {
  std::ostringstream out;
  out << kMagic << ' ' << kFormatVersion << '\n';
  out << "temperature " << hexfloat(temperature) << '\n';
  out << "vocab " << vocab.size() << ' ' << vocab.doc_count() << '\n';
  for (std::size_t i = 0; i < vocab.size(); ++i) {
    out << vocab.token(i) << ' ' << hexfloat(vocab.idf(i)) << '\n';
  }
  write_matrix(out, encoder);
  write_matrix(out, encoder_bias);
  write_matrix(out, classifier);
  write_matrix(out, classifier_bias);
  return out.str();
}

DisciplineModel DisciplineModel::deserialize(std::string_view data) {
  std::istringstream in{std::string(data)};
  std::string magic;
  int version = 0;
  if (!(in >> magic >> version) || magic != kMagic) throw Error("not a discipline model");
  if (version != kFormatVersion) {
    throw Error("unsupported discipline model version " + std::to_string(version));
  }
  DisciplineModel m;
  std::string key;
  in >> key;
  if (key != "temperature") throw Error("discipline model: expected temperature");
  m.temperature = read_hexfloat(in, "discipline model");
  std::size_t n = 0;
  std::size_t docs = 0;
  in >> key >> n >> docs;
  if (key != "vocab" || !in) throw Error("discipline model: expected vocab");
  std::vector<std::string> tokens(n);
  std::vector<double> idf(n);
  for (std::size_t i = 0; i < n; ++i) {
    in >> tokens[i];
    idf[i] = read_hexfloat(in, "discipline model");
  }
  m.vocab = Vocabulary(std::move(tokens), std::move(idf), docs);
  m.encoder = read_matrix(in, "discipline model");
  m.encoder_bias = read_matrix(in, "discipline model");
  m.classifier = read_matrix(in, "discipline model");
  m.classifier_bias = read_matrix(in, "discipline model");
  if (m.encoder.rows() != static_cast<Eigen::Index>(n) ||
      m.encoder.cols() != m.encoder_bias.size() ||
      m.classifier.rows() != m.encoder_bias.size() ||
      m.classifier.cols() != static_cast<Eigen::Index>(kDisciplineCount) ||
      m.classifier_bias.size() != static_cast<Eigen::Index>(kDisciplineCount)) {
    throw Error("discipline model: inconsistent shapes");
  }
  if (!(m.temperature > 0.0)) throw Error("discipline model: temperature must be positive");
  return m;
}

void DisciplineModel::save(const std::filesystem::path& path) const {
  io::write_file(path, serialize());
}

DisciplineModel DisciplineModel::load(const std::filesystem::path& path) {
  return deserialize(io::read_file(path));
}

DisciplineModel init_model(Vocabulary vocab, std::size_t dim, double temperature,
                           std::uint64_t seed) {
  if (dim == 0) throw Error("init_model: embedding width must be positive");
  if (!(temperature > 0.0)) throw Error("init_model: temperature must be positive");
  Rng rng(seed);
  const auto d = static_cast<Eigen::Index>(dim);
  const auto v = static_cast<Eigen::Index>(vocab.size());
  const auto labels = static_cast<Eigen::Index>(kDisciplineCount);
  DisciplineModel m;
  m.temperature = temperature;
  const double enc_scale = 1.0 / std::sqrt(static_cast<double>(dim));
  m.encoder = Eigen::MatrixXd::NullaryExpr(v, d, [&] { return rng.uniform(-1.0, 1.0); });
  // Non-zero bias keeps every embedding away from the origin, where cosine
  // similarity is undefined.
  m.encoder_bias = Eigen::VectorXd::NullaryExpr(d, [&] { return rng.uniform(-1.0, 1.0) * enc_scale; });
  m.classifier = Eigen::MatrixXd::NullaryExpr(d, labels, [&] { return rng.uniform(-1.0, 1.0) * enc_scale; });
  m.classifier_bias = Eigen::VectorXd::Zero(labels);
  m.vocab = std::move(vocab);
  return m;
}

std::vector<std::string> augment(const std::vector<std::string>& tokens, Rng& rng,
                                 double drop_prob) {
  if (tokens.empty()) throw Error("augment: empty document");
  if (!(drop_prob >= 0.0 && drop_prob < 1.0)) throw Error("augment: drop_prob must be in [0, 1)");
  std::vector<std::string> out;
  for (const auto& t : tokens) {
    if (!rng.bernoulli(drop_prob)) out.push_back(t);
  }
  if (out.empty()) out.push_back(tokens[rng.below(tokens.size())]);
  return out;
}

Prediction labels_from_probabilities(const Eigen::VectorXd& probabilities, double threshold) {
  Prediction p;
  p.probabilities = probabilities;
  Eigen::Index best = 0;
  for (Eigen::Index k = 0; k < probabilities.size(); ++k) {
    if (probabilities[k] >= threshold) p.labels.push_back(static_cast<std::size_t>(k));
    if (probabilities[k] > probabilities[best]) best = k;
  }
  if (p.labels.empty()) p.labels.push_back(static_cast<std::size_t>(best));
  return p;
}

Prediction predict(std::string_view text, const DisciplineModel& model, double threshold) {
  if (!(threshold > 0.0 && threshold < 1.0)) throw Error("predict: threshold must be in (0, 1)");
  const auto x = featurize(text::words(text), model.vocab);
  return labels_from_probabilities(model.probabilities(x), threshold);
}

}  // namespace skg::classify
