#include "skg/extract/features.hpp"

#include "skg/common/text.hpp"

namespace skg::extract {

RankFeatures features(const Candidate& c, const GlossaryEntry& entry, const EsaIndex& index) {
  RankFeatures f;
  f.tfidf_score = c.esa_score;
  f.length = static_cast<double>(text::split_whitespace(entry.name).size());
  const auto tokens = text::words(entry.name);
  if (!tokens.empty()) {
    double sum = 0.0;
    for (const auto& t : tokens) sum += index.idf(t);
    f.complexity = sum / static_cast<double>(tokens.size());
  }
  f.letter_count = static_cast<double>(text::count_letters(entry.name));
  return f;
}

}  // namespace skg::extract
