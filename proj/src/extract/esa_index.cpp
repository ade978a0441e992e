#include "skg/extract/esa_index.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "skg/common/error.hpp"
#include "skg/common/text.hpp"

namespace skg::extract {
namespace {

char ascii_lower(char c) { return (c >= 'A' && c <= 'Z') ? static_cast<char>(c - 'A' + 'a') : c; }

bool is_word_byte(char c) {
  const auto u = static_cast<unsigned char>(c);
  return u >= 0x80 || (c >= '0' && c <= '9') || (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z');
}

}  // namespace

EsaIndex::EsaIndex(std::vector<GlossaryEntry> glossary) : entries_(std::move(glossary)) {
  if (entries_.empty()) throw Error("esa index: empty glossary");
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    if (!by_id_.emplace(entries_[i].entity_id, i).second) {
      throw Error("esa index: duplicate entity_id " + entries_[i].entity_id);
    }
  }

  std::vector<std::vector<std::string>> docs;
  docs.reserve(entries_.size());
  std::map<std::string, std::size_t> df;  // ordered, so term indices are reproducible
  for (const auto& e : entries_) {
    docs.push_back(text::words(e.description));
    std::vector<std::string> uniq = docs.back();
    std::sort(uniq.begin(), uniq.end());
    uniq.erase(std::unique(uniq.begin(), uniq.end()), uniq.end());
    for (const auto& t : uniq) ++df[t];
  }
  const double n = static_cast<double>(entries_.size());
  for (const auto& [term, count] : df) {
    term_index_.emplace(term, term_idf_.size());
    term_idf_.push_back(std::log(n / static_cast<double>(count)));
  }
  postings_.resize(term_idf_.size());
  for (std::size_t d = 0; d < docs.size(); ++d) {
    doc_vectors_.push_back(vectorize(docs[d], false));
    for (const auto& [term, w] : doc_vectors_.back()) postings_[term].emplace_back(d, w);
  }
}

const GlossaryEntry* EsaIndex::find(std::string_view entity_id) const {
  const auto it = by_id_.find(std::string(entity_id));
  return it == by_id_.end() ? nullptr : &entries_[it->second];
}

double EsaIndex::idf(const std::string& token) const {
  const auto it = term_index_.find(token);
  if (it != term_index_.end()) return term_idf_[it->second];
  return std::log(static_cast<double>(entries_.size()));
}

// Out-of-vocabulary query terms still count towards the query norm; they get
// index positions past the vocabulary so they never meet a posting list.
EsaIndex::SparseVector EsaIndex::vectorize(const std::vector<std::string>& tokens,
                                           bool extend_terms) const {
  std::map<std::string, std::size_t> counts;
  for (const auto& t : tokens) ++counts[t];
  SparseVector v;
  std::size_t next_oov = term_idf_.size();
  double norm2 = 0.0;
  const double len = static_cast<double>(tokens.size());
  for (const auto& [term, count] : counts) {
    const auto it = term_index_.find(term);
    std::size_t idx = 0;
    double idf_value = 0.0;
    if (it != term_index_.end()) {
      idx = it->second;
      idf_value = term_idf_[idx];
    } else {
      if (!extend_terms) continue;
      idx = next_oov++;
      idf_value = idf(term);
    }
    const double w = (static_cast<double>(count) / len) * idf_value;
    if (w == 0.0) continue;
    v.emplace_back(idx, w);
    norm2 += w * w;
  }
  if (norm2 > 0.0) {
    const double inv = 1.0 / std::sqrt(norm2);
    for (auto& [idx, w] : v) w *= inv;
  }
  std::sort(v.begin(), v.end());
  return v;
}

std::vector<Candidate> EsaIndex::candidates(std::string_view q, std::size_t top_n) const {
  if (top_n == 0) throw Error("candidates: top_n must be >= 1");
  const auto tokens = text::words(q);
  if (tokens.empty()) return {};
  const auto query = vectorize(tokens, true);
  std::vector<double> score(entries_.size(), 0.0);
  for (const auto& [term, qw] : query) {
    if (term >= postings_.size()) continue;
    for (const auto& [doc, dw] : postings_[term]) score[doc] += qw * dw;
  }
  std::vector<std::size_t> hits;
  for (std::size_t d = 0; d < score.size(); ++d) {
    if (score[d] > 0.0) hits.push_back(d);
  }
  std::sort(hits.begin(), hits.end(), [&](std::size_t a, std::size_t b) {
    if (score[a] != score[b]) return score[a] > score[b];
    return entries_[a].entity_id < entries_[b].entity_id;
  });
  if (hits.size() > top_n) hits.resize(top_n);
  std::vector<Candidate> out;
  out.reserve(hits.size());
  for (const auto d : hits) {
    out.push_back({entries_[d].entity_id, score[d], find_verbatim(q, entries_[d].name)});
  }
  return out;
}

double EsaIndex::description_similarity(std::size_t a, std::size_t b) const {
  const auto& va = doc_vectors_.at(a);
  const auto& vb = doc_vectors_.at(b);
  double dot = 0.0;
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < va.size() && j < vb.size()) {
    if (va[i].first == vb[j].first) {
      dot += va[i++].second * vb[j++].second;
    } else if (va[i].first < vb[j].first) {
      ++i;
    } else {
      ++j;
    }
  }
  return dot;
}

std::optional<Span> find_verbatim(std::string_view text, std::string_view name) {
  name = text::trim(name);
  if (name.empty() || name.size() > text.size()) return std::nullopt;
  for (std::size_t pos = 0; pos + name.size() <= text.size(); ++pos) {
    bool eq = true;
    for (std::size_t k = 0; k < name.size() && eq; ++k) {
      eq = ascii_lower(text[pos + k]) == ascii_lower(name[k]);
    }
    if (!eq) continue;
    const std::size_t end = pos + name.size();
    const bool left_ok = pos == 0 || !is_word_byte(text[pos - 1]) || !is_word_byte(name.front());
    const bool right_ok =
        end == text.size() || !is_word_byte(text[end]) || !is_word_byte(name.back());
    if (left_ok && right_ok) return Span{pos, end};
  }
  return std::nullopt;
}

}  // namespace skg::extract
