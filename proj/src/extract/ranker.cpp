#include "skg/extract/ranker.hpp"

#include <cmath>
#include <sstream>

#include "skg/common/error.hpp"
#include "skg/common/eigen_util.hpp"
#include "skg/common/hexfloat.hpp"
#include "skg/common/io.hpp"
#include "skg/common/rng.hpp"
#include "skg/extract/lambdarank.hpp"
#include "skg/extract/ndcg.hpp"

namespace skg::extract {
namespace {

constexpr std::string_view kMagic = "skg-ranker-model";
constexpr int kFormatVersion = 1;

Eigen::Vector4d to_vector(const RankFeatures& f) {
  const auto a = f.as_array();
  return {a[0], a[1], a[2], a[3]};
}

bool has_both_classes(const RankGroup& g) {
  bool pos = false;
  bool neg = false;
  for (int l : g.labels) (l == 1 ? pos : neg) = true;
  return pos && neg;
}

}  // namespace

double RankerModel::score(const RankFeatures& f) const {
  const Eigen::VectorXd pre = w1 * to_vector(f) + b1;
  return w2.dot(pre.cwiseMax(0.0)) + b2;
}

std::vector<double> RankerModel::score_all(std::span<const RankFeatures> fs) const {
  std::vector<double> out;
  out.reserve(fs.size());
  for (const auto& f : fs) out.push_back(score(f));
  return out;
}

bool operator==(const RankerModel& a, const RankerModel& b) {
  return same_values(a.w1, b.w1) && same_values(a.b1, b.b1) && same_values(a.w2, b.w2) &&
         a.b2 == b.b2 && a.sigma == b.sigma;
}

std::string RankerModel::serialize() const {
  std::ostringstream out;
  out << kMagic << ' ' << kFormatVersion << '\n';
  out << "sigma " << hexfloat(sigma) << '\n';
  out << "b2 " << hexfloat(b2) << '\n';
  write_matrix(out, w1);
  write_matrix(out, b1);
  write_matrix(out, w2);
  return out.str();
}

RankerModel RankerModel::deserialize(std::string_view data) {
  std::istringstream in{std::string(data)};
  const std::string what = "ranker model";
  std::string magic;
  int version = 0;
  if (!(in >> magic >> version) || magic != kMagic) throw Error("not a ranker model");
  if (version != kFormatVersion) throw Error("unsupported ranker model version");
  RankerModel m;
  expect_word(in, "sigma", what);
  m.sigma = read_hexfloat(in, what);
  expect_word(in, "b2", what);
  m.b2 = read_hexfloat(in, what);
  m.w1 = read_matrix(in, what);
  m.b1 = read_matrix(in, what);
  m.w2 = read_matrix(in, what);
  if (m.w1.cols() != static_cast<Eigen::Index>(kFeatureCount) || m.w1.rows() != m.b1.size() ||
      m.w2.size() != m.b1.size()) {
    throw Error("ranker model: inconsistent shapes");
  }
  return m;
}

void RankerModel::save(const std::filesystem::path& path) const { io::write_file(path, serialize()); }

RankerModel RankerModel::load(const std::filesystem::path& path) {
  return deserialize(io::read_file(path));
}

RankerModel init_ranker(std::size_t hidden, double sigma, std::uint64_t seed) {
  if (hidden == 0) throw Error("init_ranker: hidden width must be positive");
  if (!(sigma > 0.0)) throw Error("init_ranker: sigma must be positive");
  Rng rng(seed);
  const auto h = static_cast<Eigen::Index>(hidden);
  RankerModel m;
  m.sigma = sigma;
  m.w1.resize(h, static_cast<Eigen::Index>(kFeatureCount));
  m.b1.resize(h);
  m.w2.resize(h);
  const double s1 = std::sqrt(2.0 / static_cast<double>(kFeatureCount));
  const double s2 = std::sqrt(1.0 / static_cast<double>(hidden));
  for (Eigen::Index r = 0; r < h; ++r) {
    for (Eigen::Index c = 0; c < m.w1.cols(); ++c) m.w1(r, c) = s1 * rng.normal();
  }
  for (Eigen::Index r = 0; r < h; ++r) m.b1(r) = 0.1;
  for (Eigen::Index r = 0; r < h; ++r) m.w2(r) = s2 * rng.normal();
  m.b2 = 0.0;
  return m;
}

double ranker_objective(const RankerModel& model, std::span<const RankGroup> groups,
                        std::size_t k, RankerGradient* grad) {
  if (grad) {
    grad->w1 = Eigen::MatrixXd::Zero(model.w1.rows(), model.w1.cols());
    grad->b1 = Eigen::VectorXd::Zero(model.b1.size());
    grad->w2 = Eigen::VectorXd::Zero(model.w2.size());
    grad->b2 = 0.0;
  }
  double total = 0.0;
  for (const auto& g : groups) {
    if (g.features.size() != g.labels.size()) throw Error("rank group " + g.paper_id + ": size mismatch");
    const std::size_t n = g.features.size();
    std::vector<Eigen::VectorXd> pre(n);
    std::vector<double> scores(n);
    for (std::size_t i = 0; i < n; ++i) {
      pre[i] = model.w1 * to_vector(g.features[i]) + model.b1;
      scores[i] = model.w2.dot(pre[i].cwiseMax(0.0)) + model.b2;
    }
    const auto pairs = preference_pairs(g.labels);
    const auto loss = lambdarank_loss(pairs, scores, g.labels, k, model.sigma);
    total += loss.loss;
    if (!grad) continue;
    for (std::size_t i = 0; i < n; ++i) {
      const double ds = loss.grad[i];
      if (ds == 0.0) continue;
      const Eigen::VectorXd act = pre[i].cwiseMax(0.0);
      const Eigen::VectorXd mask = (pre[i].array() > 0.0).cast<double>().matrix();
      const Eigen::VectorXd dpre = ds * model.w2.cwiseProduct(mask);
      grad->w2 += ds * act;
      grad->b2 += ds;
      grad->w1 += dpre * to_vector(g.features[i]).transpose();
      grad->b1 += dpre;
    }
  }
  return total;
}

RankerModel train_ranker(const std::vector<RankGroup>& groups, const RankerConfig& config,
                         RankerReport* report) {
  RankerReport local;
  RankerReport& rep = report ? *report : local;
  rep = {};
  RankerModel model = init_ranker(config.hidden, config.sigma, mix_seed(config.seed, 0));

  std::vector<RankGroup> usable;
  for (const auto& g : groups) {
    if (has_both_classes(g)) {
      usable.push_back(g);
    } else {
      rep.warnings.push_back("group " + g.paper_id + " skipped: needs a positive and a negative");
    }
  }
  rep.groups_used = usable.size();
  if (usable.empty() || config.epochs == 0) return model;

  Eigen::Vector4d mean = Eigen::Vector4d::Zero();
  Eigen::Vector4d sq = Eigen::Vector4d::Zero();
  double count = 0.0;
  for (const auto& g : usable) {
    for (const auto& f : g.features) {
      const auto v = to_vector(f);
      mean += v;
      sq += v.cwiseProduct(v);
      count += 1.0;
    }
  }
  mean /= count;
  Eigen::Vector4d scale = (sq / count - mean.cwiseProduct(mean)).cwiseMax(0.0).cwiseSqrt();
  for (int c = 0; c < 4; ++c) {
    if (!(scale(c) > 1e-12)) scale(c) = 1.0;
  }
  for (auto& g : usable) {
    for (auto& f : g.features) {
      const Eigen::Vector4d z = (to_vector(f) - mean).cwiseQuotient(scale);
      f = {z(0), z(1), z(2), z(3)};
    }
  }

  Rng order_rng(mix_seed(config.seed, 1));
  std::vector<std::size_t> order(usable.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  RankerGradient grad;
  for (std::size_t epoch = 0; epoch < config.epochs; ++epoch) {
    order_rng.shuffle(order);
    double epoch_loss = 0.0;
    for (const auto gi : order) {
      epoch_loss += ranker_objective(model, std::span(&usable[gi], 1), config.k, &grad);
      model.w1 -= config.learning_rate * grad.w1;
      model.b1 -= config.learning_rate * grad.b1;
      model.w2 -= config.learning_rate * grad.w2;
      model.b2 -= config.learning_rate * grad.b2;
    }
    rep.epoch_loss.push_back(epoch_loss / static_cast<double>(usable.size()));
  }

  // Fold the standardisation into the first layer: W1 ((f - mu) / s) + b1.
  for (Eigen::Index c = 0; c < model.w1.cols(); ++c) model.w1.col(c) /= scale(c);
  model.b1 -= model.w1 * mean;
  return model;
}

double mean_ndcg(const RankerModel& model, std::span<const RankGroup> groups, std::size_t k) {
  if (groups.empty()) throw Error("mean_ndcg: no groups");
  double sum = 0.0;
  for (const auto& g : groups) {
    const auto scores = model.score_all(g.features);
    sum += ndcg(labels_by_score(scores, g.labels), k);
  }
  return sum / static_cast<double>(groups.size());
}

}  // namespace skg::extract
