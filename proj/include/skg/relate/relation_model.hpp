#pragma once

#include <Eigen/Dense>
#include <array>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "skg/relate/triples.hpp"

namespace skg::relate {

inline constexpr std::size_t kMaxTokens = 128;

/// Token index with 0 reserved for out-of-vocabulary tokens.
class TokenVocab {
 public:
  TokenVocab();
  explicit TokenVocab(std::vector<std::string> tokens);  // tokens[0] must be the unknown marker

  std::size_t index(const std::string& token) const;  // 0 when absent
  std::size_t size() const { return tokens_.size(); }
  const std::vector<std::string>& tokens() const { return tokens_; }
  friend bool operator==(const TokenVocab& a, const TokenVocab& b) { return a.tokens_ == b.tokens_; }

 private:
  std::vector<std::string> tokens_;
  std::unordered_map<std::string, std::size_t> index_;
};

/// Token ids plus the 0/1 segment mask marking head and tail tokens.
struct EncodedInput {
  std::vector<std::size_t> token_ids;
  std::vector<int> segment;
};

/// Tokenises the sentence (first kMaxTokens tokens) and marks the first
/// occurrence of the head's tokens and of the tail's tokens.
EncodedInput encode_input(std::string_view sentence, std::string_view head,
                          std::string_view tail, const TokenVocab& vocab);

/// Mean-pooled sum of token, segment and position embeddings, followed by
/// p(l | h) = softmax(W h).
struct RelationModel {
  TokenVocab vocab;
  Eigen::MatrixXd token_emb;     // |vocab| x d
  Eigen::MatrixXd segment_emb;   // 2 x d
  Eigen::MatrixXd position_emb;  // kMaxTokens x d
  Eigen::MatrixXd w;             // 4 x d, one row per label

  std::size_t dim() const { return static_cast<std::size_t>(token_emb.cols()); }

  Eigen::VectorXd encode(const EncodedInput& input) const;

  std::string serialize() const;
  static RelationModel deserialize(std::string_view data);
  void save(const std::filesystem::path& path) const;
  static RelationModel load(const std::filesystem::path& path);
};

bool operator==(const RelationModel& a, const RelationModel& b);

/// Numerically stable softmax(W h).
Eigen::VectorXd classify(const Eigen::VectorXd& h, const RelationModel& model);
Eigen::VectorXd softmax(const Eigen::VectorXd& logits);

struct RelationPrediction {
  RelationLabel label = RelationLabel::unknown;
  Eigen::VectorXd probabilities;
};

RelationPrediction predict_relation(std::string_view sentence, std::string_view head,
                                    std::string_view tail, const RelationModel& model);

RelationModel init_relation_model(TokenVocab vocab, std::size_t dim, std::uint64_t seed);

/// Vocabulary of every token seen in the annotation sentences, sorted, after
/// the reserved unknown slot.
TokenVocab build_token_vocab(const std::vector<RelationAnnotation>& annotations);

struct RelationExample {
  EncodedInput input;
  std::size_t label = 0;
};

struct RelationGradient {
  Eigen::MatrixXd token_emb;
  Eigen::MatrixXd segment_emb;
  Eigen::MatrixXd position_emb;
  Eigen::MatrixXd w;
};

/// Mean negative log-likelihood over `batch`; exact gradient when `grad` is
/// set.
double relation_objective(const RelationModel& model, std::span<const RelationExample> batch,
                          RelationGradient* grad);

struct RelationTrainConfig {
  std::size_t epochs = 30;
  double learning_rate = 0.5;
  std::size_t batch_size = 16;
  std::size_t dim = 16;
  std::uint64_t seed = 13;
};

struct RelationTrainReport {
  std::vector<double> epoch_loss;
};

/// Mini-batch gradient descent on the log-likelihood. Throws unless at least
/// two distinct labels are present.
RelationModel train_relation(const std::vector<RelationAnnotation>& annotations,
                             const RelationTrainConfig& config,
                             RelationTrainReport* report = nullptr);

}  // namespace skg::relate
