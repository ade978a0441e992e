#pragma once

#include <array>

#include "skg/extract/esa_index.hpp"

namespace skg::extract {

inline constexpr std::size_t kFeatureCount = 4;

struct RankFeatures {
  double tfidf_score = 0.0;
  double length = 0.0;        // whitespace tokens in the entity name
  double complexity = 0.0;    // mean description-corpus idf of the name's word tokens
  double letter_count = 0.0;  // alphabetic characters in the name

  std::array<double, kFeatureCount> as_array() const {
    return {tfidf_score, length, complexity, letter_count};
  }
  friend bool operator==(const RankFeatures&, const RankFeatures&) = default;
};

RankFeatures features(const Candidate& c, const GlossaryEntry& entry, const EsaIndex& index);

}  // namespace skg::extract
