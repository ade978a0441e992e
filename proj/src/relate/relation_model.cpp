#include "skg/relate/relation_model.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

#include "skg/common/eigen_util.hpp"
#include "skg/common/error.hpp"
#include "skg/common/hexfloat.hpp"
#include "skg/common/io.hpp"
#include "skg/common/rng.hpp"
#include "skg/common/text.hpp"

namespace skg::relate {
namespace {

constexpr std::string_view kMagic = "skg-relation-model";
constexpr int kFormatVersion = 1;
constexpr std::string_view kUnknownToken = "<unk>";

// Marks the first occurrence of `needle` as a token run inside `tokens`.
void mark_span(const std::vector<std::string>& tokens, const std::vector<std::string>& needle,
               std::vector<int>& mask) {
  if (needle.empty() || needle.size() > tokens.size()) return;
  for (std::size_t s = 0; s + needle.size() <= tokens.size(); ++s) {
    if (std::equal(needle.begin(), needle.end(), tokens.begin() + static_cast<std::ptrdiff_t>(s))) {
      for (std::size_t k = 0; k < needle.size(); ++k) mask[s + k] = 1;
      return;
    }
  }
}

Eigen::MatrixXd random_matrix(Eigen::Index rows, Eigen::Index cols, double scale, Rng& rng) {
  Eigen::MatrixXd m(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r) {
    for (Eigen::Index c = 0; c < cols; ++c) m(r, c) = scale * rng.normal();
  }
  return m;
}

}  // namespace

TokenVocab::TokenVocab() : TokenVocab(std::vector<std::string>{std::string(kUnknownToken)}) {}

TokenVocab::TokenVocab(std::vector<std::string> tokens) : tokens_(std::move(tokens)) {
  if (tokens_.empty()) throw Error("token vocabulary needs the unknown slot");
  for (std::size_t i = 1; i < tokens_.size(); ++i) {
    if (!index_.emplace(tokens_[i], i).second) throw Error("duplicate token " + tokens_[i]);
  }
}

std::size_t TokenVocab::index(const std::string& token) const {
  const auto it = index_.find(token);
  return it == index_.end() ? 0 : it->second;
}

EncodedInput encode_input(std::string_view sentence, std::string_view head,
                          std::string_view tail, const TokenVocab& vocab) {
  auto tokens = text::words(sentence);
  if (tokens.size() > kMaxTokens) tokens.resize(kMaxTokens);
  EncodedInput in;
  in.segment.assign(tokens.size(), 0);
  mark_span(tokens, text::words(head), in.segment);
  mark_span(tokens, text::words(tail), in.segment);
  for (const auto& t : tokens) in.token_ids.push_back(vocab.index(t));
  return in;
}

Eigen::VectorXd RelationModel::encode(const EncodedInput& input) const {
  const std::size_t n = input.token_ids.size();
  if (n == 0) throw Error("relation encode: sentence has no tokens");
  if (input.segment.size() != n) throw Error("relation encode: mask length mismatch");
  Eigen::VectorXd h = Eigen::VectorXd::Zero(token_emb.cols());
  for (std::size_t i = 0; i < n; ++i) {
    const auto id = static_cast<Eigen::Index>(input.token_ids[i] < vocab.size() ? input.token_ids[i] : 0);
    h += token_emb.row(id).transpose();
    h += segment_emb.row(input.segment[i] ? 1 : 0).transpose();
    h += position_emb.row(static_cast<Eigen::Index>(i)).transpose();
  }
  return h / static_cast<double>(n);
}

bool operator==(const RelationModel& a, const RelationModel& b) {
  return a.vocab == b.vocab && same_values(a.token_emb, b.token_emb) &&
         same_values(a.segment_emb, b.segment_emb) &&
         same_values(a.position_emb, b.position_emb) && same_values(a.w, b.w);
}

Eigen::VectorXd softmax(const Eigen::VectorXd& logits) {
  const double m = logits.maxCoeff();
  Eigen::VectorXd e = (logits.array() - m).exp().matrix();
  return e / e.sum();
}

Eigen::VectorXd classify(const Eigen::VectorXd& h, const RelationModel& model) {
  return softmax(model.w * h);
}

RelationPrediction predict_relation(std::string_view sentence, std::string_view head,
                                    std::string_view tail, const RelationModel& model) {
  RelationPrediction p;
  p.probabilities = classify(model.encode(encode_input(sentence, head, tail, model.vocab)), model);
  Eigen::Index best = 0;
  p.probabilities.maxCoeff(&best);
  p.label = static_cast<RelationLabel>(best);
  return p;
}

std::string RelationModel::serialize() const {
  std::ostringstream out;
  out << kMagic << ' ' << kFormatVersion << '\n';
  out << "vocab " << vocab.size() << '\n';
  for (const auto& t : vocab.tokens()) out << t << '\n';
  write_matrix(out, token_emb);
  write_matrix(out, segment_emb);
  write_matrix(out, position_emb);
  write_matrix(out, w);
  return out.str();
}

RelationModel RelationModel::deserialize(std::string_view data) {
  std::istringstream in{std::string(data)};
  const std::string what = "relation model";
  std::string magic;
  int version = 0;
  if (!(in >> magic >> version) || magic != kMagic) throw Error("not a relation model");
  if (version != kFormatVersion) throw Error("unsupported relation model version");
  expect_word(in, "vocab", what);
  std::size_t n = 0;
  if (!(in >> n) || n == 0) throw Error(what + ": bad vocabulary size");
  std::vector<std::string> tokens(n);
  for (auto& t : tokens) {
    if (!(in >> t)) throw Error(what + ": truncated vocabulary");
  }
  RelationModel m;
  m.vocab = TokenVocab(std::move(tokens));
  m.token_emb = read_matrix(in, what);
  m.segment_emb = read_matrix(in, what);
  m.position_emb = read_matrix(in, what);
  m.w = read_matrix(in, what);
  const auto d = m.token_emb.cols();
  if (m.token_emb.rows() != static_cast<Eigen::Index>(n) || m.segment_emb.rows() != 2 ||
      m.segment_emb.cols() != d || m.position_emb.rows() != static_cast<Eigen::Index>(kMaxTokens) ||
      m.position_emb.cols() != d || m.w.rows() != static_cast<Eigen::Index>(kLabelCount) ||
      m.w.cols() != d) {
    throw Error(what + ": inconsistent shapes");
  }
  return m;
}

void RelationModel::save(const std::filesystem::path& path) const {
  io::write_file(path, serialize());
}

RelationModel RelationModel::load(const std::filesystem::path& path) {
  return deserialize(io::read_file(path));
}

RelationModel init_relation_model(TokenVocab vocab, std::size_t dim, std::uint64_t seed) {
  if (dim == 0) throw Error("init_relation_model: dim must be positive");
  Rng rng(seed);
  const auto d = static_cast<Eigen::Index>(dim);
  RelationModel m;
  m.vocab = std::move(vocab);
  m.token_emb = random_matrix(static_cast<Eigen::Index>(m.vocab.size()), d, 0.1, rng);
  m.segment_emb = random_matrix(2, d, 0.1, rng);
  m.position_emb = random_matrix(static_cast<Eigen::Index>(kMaxTokens), d, 0.1, rng);
  m.w = random_matrix(static_cast<Eigen::Index>(kLabelCount), d, 0.1, rng);
  return m;
}

TokenVocab build_token_vocab(const std::vector<RelationAnnotation>& annotations) {
  std::set<std::string> seen;
  for (const auto& a : annotations) {
    for (auto& t : text::words(a.sentence)) seen.insert(std::move(t));
  }
  std::vector<std::string> tokens{std::string(kUnknownToken)};
  for (const auto& t : seen) {
    if (t != kUnknownToken) tokens.push_back(t);
  }
  return TokenVocab(std::move(tokens));
}

double relation_objective(const RelationModel& model, std::span<const RelationExample> batch,
                          RelationGradient* grad) {
  if (batch.empty()) throw Error("relation_objective: empty batch");
  if (grad) {
    grad->token_emb = Eigen::MatrixXd::Zero(model.token_emb.rows(), model.token_emb.cols());
    grad->segment_emb = Eigen::MatrixXd::Zero(2, model.segment_emb.cols());
    grad->position_emb = Eigen::MatrixXd::Zero(model.position_emb.rows(), model.position_emb.cols());
    grad->w = Eigen::MatrixXd::Zero(model.w.rows(), model.w.cols());
  }
  const double inv_b = 1.0 / static_cast<double>(batch.size());
  double loss = 0.0;
  for (const auto& ex : batch) {
    const Eigen::VectorXd h = model.encode(ex.input);
    const Eigen::VectorXd logits = model.w * h;
    const double m = logits.maxCoeff();
    const double lse = m + std::log((logits.array() - m).exp().sum());
    const auto label = static_cast<Eigen::Index>(ex.label);
    loss += (lse - logits(label)) * inv_b;
    if (!grad) continue;
    Eigen::VectorXd dlogits = softmax(logits);
    dlogits(label) -= 1.0;
    dlogits *= inv_b;
    grad->w += dlogits * h.transpose();
    const Eigen::VectorXd dh = model.w.transpose() * dlogits;
    const double inv_n = 1.0 / static_cast<double>(ex.input.token_ids.size());
    for (std::size_t i = 0; i < ex.input.token_ids.size(); ++i) {
      const auto id = static_cast<Eigen::Index>(
          ex.input.token_ids[i] < model.vocab.size() ? ex.input.token_ids[i] : 0);
      grad->token_emb.row(id) += inv_n * dh.transpose();
      grad->segment_emb.row(ex.input.segment[i] ? 1 : 0) += inv_n * dh.transpose();
      grad->position_emb.row(static_cast<Eigen::Index>(i)) += inv_n * dh.transpose();
    }
  }
  return loss;
}

RelationModel train_relation(const std::vector<RelationAnnotation>& annotations,
                             const RelationTrainConfig& config, RelationTrainReport* report) {
  std::set<RelationLabel> labels;
  for (const auto& a : annotations) labels.insert(a.label);
  if (labels.size() < 2) throw Error("train_relation: need at least two distinct labels");
  if (config.batch_size == 0) throw Error("train_relation: batch size must be positive");

  RelationModel model =
      init_relation_model(build_token_vocab(annotations), config.dim, mix_seed(config.seed, 0));
  std::vector<RelationExample> examples;
  for (const auto& a : annotations) {
    auto in = encode_input(a.sentence, a.head, a.tail, model.vocab);
    if (in.token_ids.empty()) continue;
    examples.push_back({std::move(in), static_cast<std::size_t>(a.label)});
  }
  if (examples.empty()) throw Error("train_relation: no usable sentences");

  Rng order_rng(mix_seed(config.seed, 1));
  RelationGradient grad;
  for (std::size_t epoch = 0; epoch < config.epochs; ++epoch) {
    order_rng.shuffle(examples);
    double total = 0.0;
    for (std::size_t start = 0; start < examples.size(); start += config.batch_size) {
      const std::size_t len = std::min(config.batch_size, examples.size() - start);
      const std::span<const RelationExample> batch(examples.data() + start, len);
      total += relation_objective(model, batch, &grad) * static_cast<double>(len);
      model.token_emb -= config.learning_rate * grad.token_emb;
      model.segment_emb -= config.learning_rate * grad.segment_emb;
      model.position_emb -= config.learning_rate * grad.position_emb;
      model.w -= config.learning_rate * grad.w;
    }
    if (report) report->epoch_loss.push_back(total / static_cast<double>(examples.size()));
  }
  return model;
}

}  // namespace skg::relate
