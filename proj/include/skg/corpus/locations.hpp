#pragma once

#include <string_view>
#include <vector>

#include "skg/corpus/gazetteer.hpp"
#include "skg/corpus/records.hpp"

namespace skg::corpus {

struct TextMatch {
  std::size_t begin = 0;  // byte offsets into the searched text
  std::size_t end = 0;
  std::size_t entry = 0;  // index into Gazetteer::entries()
};

/// Whole-word gazetteer matches in `text`, longest first, non-overlapping,
/// returned in text order.
std::vector<TextMatch> match_places(std::string_view text, const Gazetteer& gazetteer);

/// Location mentions in a paper's title and abstract, one per distinct
/// gazetteer entry (first occurrence wins).
std::vector<LocationMention> tag_locations(const PaperRecord& paper,
                                           const Gazetteer& gazetteer);

}  // namespace skg::corpus
