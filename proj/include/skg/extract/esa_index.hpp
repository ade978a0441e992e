#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "skg/extract/glossary.hpp"

namespace skg::extract {

/// Byte range [begin, end) in the query text.
struct Span {
  std::size_t begin = 0;
  std::size_t end = 0;
  friend bool operator==(const Span&, const Span&) = default;
};

struct Candidate {
  std::string entity_id;
  double esa_score = 0.0;
  std::optional<Span> matched_span;
};

/// Inverted tf-idf index over glossary descriptions. idf = ln(N / df) over
/// the description corpus; vectors are tf * idf with tf = count / length,
/// L2-normalised. Immutable once built.
class EsaIndex {
 public:
  /// Throws on an empty glossary or a repeated entity_id.
  explicit EsaIndex(std::vector<GlossaryEntry> glossary);

  std::size_t size() const { return entries_.size(); }
  const std::vector<GlossaryEntry>& entries() const { return entries_; }
  const GlossaryEntry* find(std::string_view entity_id) const;

  /// idf of a folded token; a token absent from every description is
  /// treated as df = 1.
  double idf(const std::string& token) const;

  /// Cosine similarity of `q` to every description, best `top_n` with a
  /// positive score, ordered by score then entity_id.
  std::vector<Candidate> candidates(std::string_view q, std::size_t top_n = 50) const;

  /// Cosine similarity between two descriptions, by position in entries().
  double description_similarity(std::size_t a, std::size_t b) const;

 private:
  using SparseVector = std::vector<std::pair<std::size_t, double>>;  // (term, weight)

  SparseVector vectorize(const std::vector<std::string>& tokens, bool extend_terms) const;

  std::vector<GlossaryEntry> entries_;
  std::unordered_map<std::string, std::size_t> by_id_;
  std::unordered_map<std::string, std::size_t> term_index_;
  std::vector<double> term_idf_;
  std::vector<std::vector<std::pair<std::size_t, double>>> postings_;  // term -> (doc, weight)
  std::vector<SparseVector> doc_vectors_;
};

/// First case-insensitive whole-word occurrence of `name` in `text`.
/// Letters are compared after ASCII lowercasing; a match must not be
/// flanked by a letter, digit or non-ASCII byte.
std::optional<Span> find_verbatim(std::string_view text, std::string_view name);

}  // namespace skg::extract
