#include "skg/corpus/locations.hpp"

#include <algorithm>
#include <set>

#include "skg/common/text.hpp"

namespace skg::corpus {

std::vector<TextMatch> match_places(std::string_view input, const Gazetteer& gazetteer) {
  const auto tokens = text::tokenize(input);

  struct Hit {
    std::size_t first = 0;
    std::size_t count = 0;
    std::size_t entry = 0;
  };
  std::vector<Hit> hits;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    const auto* starts = gazetteer.starting_with(tokens[i].text);
    if (!starts) continue;
    for (const std::size_t e : *starts) {
      const auto& want = gazetteer.entries()[e].tokens;
      if (i + want.size() > tokens.size()) continue;
      bool ok = true;
      for (std::size_t k = 1; k < want.size() && ok; ++k) ok = tokens[i + k].text == want[k];
      if (ok) hits.push_back({i, want.size(), e});
    }
  }

  // Longest first, then leftmost; accept a hit only if its tokens are free.
  std::sort(hits.begin(), hits.end(), [](const Hit& a, const Hit& b) {
    return a.count != b.count ? a.count > b.count : a.first < b.first;
  });
  std::vector<bool> used(tokens.size(), false);
  std::vector<TextMatch> out;
  for (const auto& h : hits) {
    const auto begin = used.begin() + static_cast<std::ptrdiff_t>(h.first);
    const auto end = begin + static_cast<std::ptrdiff_t>(h.count);
    if (std::any_of(begin, end, [](bool u) { return u; })) continue;
    std::fill(begin, end, true);
    out.push_back({tokens[h.first].begin, tokens[h.first + h.count - 1].end, h.entry});
  }
  std::sort(out.begin(), out.end(),
            [](const TextMatch& a, const TextMatch& b) { return a.begin < b.begin; });
  return out;
}

std::vector<LocationMention> tag_locations(const PaperRecord& paper, const Gazetteer& gazetteer) {
  const std::string text = paper.title + "\n" + paper.abstract;
  std::vector<LocationMention> out;
  std::set<std::size_t> seen;
  for (const auto& m : match_places(text, gazetteer)) {
    if (!seen.insert(m.entry).second) continue;
    const auto& entry = gazetteer.entries()[m.entry];
    out.push_back({paper.paper_id, text.substr(m.begin, m.end - m.begin), entry.name,
                   entry.point.lat, entry.point.lon});
  }
  return out;
}

}  // namespace skg::corpus
