#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace skg::classify {

/// Token index plus document-frequency statistics of the training corpus.
class Vocabulary {
 public:
  Vocabulary() = default;
  Vocabulary(std::vector<std::string> tokens, std::vector<double> idf, std::size_t doc_count);

  std::optional<std::size_t> find(const std::string& token) const;
  std::size_t size() const { return tokens_.size(); }
  const std::string& token(std::size_t i) const { return tokens_[i]; }
  double idf(std::size_t i) const { return idf_[i]; }
  std::size_t doc_count() const { return doc_count_; }

  friend bool operator==(const Vocabulary& a, const Vocabulary& b) {
    return a.tokens_ == b.tokens_ && a.idf_ == b.idf_ && a.doc_count_ == b.doc_count_;
  }

 private:
  std::vector<std::string> tokens_;
  std::vector<double> idf_;
  std::size_t doc_count_ = 0;
  std::unordered_map<std::string, std::size_t> index_;
};

/// Keeps tokens with document frequency >= min_df, at most max_vocab of them
/// (highest df first, ties lexicographic); idf = ln(N / df). Indices follow
/// that ranking. Throws on an empty corpus; an empty result is reported
/// through `warnings`.
Vocabulary build_vocabulary(const std::vector<std::vector<std::string>>& docs,
                            std::size_t min_df, std::size_t max_vocab,
                            std::vector<std::string>* warnings = nullptr);

/// Sparse tf-idf vector, sorted by index, L2-normalised when non-zero.
struct FeatureVector {
  std::vector<std::pair<std::uint32_t, double>> entries;

  double norm() const;
  bool empty() const { return entries.empty(); }
};

/// tf = count / document length; tokens absent from the vocabulary or with
/// zero idf contribute nothing.
FeatureVector featurize(const std::vector<std::string>& tokens, const Vocabulary& vocab);

}  // namespace skg::classify
