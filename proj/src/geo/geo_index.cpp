#include "skg/geo/geo_index.hpp"

#include <algorithm>

#include "skg/common/error.hpp"
#include "skg/common/text.hpp"

namespace skg::geo {

GeoIndex::GeoIndex(const std::vector<corpus::LocationMention>& mentions,
                   const corpus::FusedCorpus& corpus) {
  for (const auto& m : mentions) {
    const auto* paper = corpus.find_paper(m.paper_id);
    if (!paper) throw Error("geo index: mention of unknown paper " + m.paper_id);
    const GeoPoint p{m.lat, m.lon};
    if (!p.valid()) throw Error("geo index: invalid coordinates for " + m.canonical_name);
    entries_.push_back({m.paper_id, m.canonical_name, p, encode(p, kIndexPrecision)});
    if (!folded_text_.count(m.paper_id)) {
      folded_text_.emplace(m.paper_id, text::fold(paper->title + "\n" + paper->abstract));
    }
  }
  std::sort(entries_.begin(), entries_.end(), [](const GeoEntry& a, const GeoEntry& b) {
    return std::tie(a.geohash, a.paper_id, a.location) < std::tie(b.geohash, b.paper_id, b.location);
  });
  for (const auto& e : entries_) hashes_by_paper_[e.paper_id].push_back(e.geohash);
  for (auto& [id, hashes] : hashes_by_paper_) {
    std::sort(hashes.begin(), hashes.end());
    hashes.erase(std::unique(hashes.begin(), hashes.end()), hashes.end());
  }
}

std::size_t cover_precision(const BBox& box, std::uint64_t max_cells) {
  std::size_t best = 1;
  for (std::size_t p = 2; p <= kIndexPrecision; ++p) {
    if (cover_size(box, p) > max_cells) break;
    best = p;
  }
  return best;
}

void GeoIndex::search_piece(const BBox& box, std::vector<std::string>& hits) const {
  for (const auto& cell : cover(box, cover_precision(box))) {
    auto it = std::lower_bound(entries_.begin(), entries_.end(), cell,
                               [](const GeoEntry& e, const std::string& c) { return e.geohash < c; });
    for (; it != entries_.end() && it->geohash.starts_with(cell); ++it) {
      if (box.contains(it->point)) hits.push_back(it->paper_id);
    }
  }
}

std::vector<std::string> GeoIndex::bbox_search(const BBox& box,
                                               std::optional<std::string_view> keyword) const {
  if (!box.valid()) throw Error("bbox_search: invalid box");
  std::vector<std::string> hits;
  for (const auto& piece : box.split()) search_piece(piece, hits);
  std::sort(hits.begin(), hits.end());
  hits.erase(std::unique(hits.begin(), hits.end()), hits.end());
  if (keyword && !text::trim(*keyword).empty()) {
    const std::string needle = text::fold(text::trim(*keyword));
    std::erase_if(hits, [&](const std::string& id) {
      return folded_text_.find(id)->second.find(needle) == std::string::npos;
    });
  }
  return hits;
}

std::map<std::string, std::size_t> GeoIndex::density_grid(std::size_t precision) const {
  if (precision < 1 || precision > 6) throw Error("density_grid: precision must be in 1-6");
  std::map<std::string, std::size_t> grid;
  for (const auto& e : entries_) ++grid[e.geohash.substr(0, precision)];
  return grid;
}

std::vector<std::string> GeoIndex::geohashes_of(std::string_view paper_id) const {
  const auto it = hashes_by_paper_.find(paper_id);
  return it == hashes_by_paper_.end() ? std::vector<std::string>{} : it->second;
}

const std::string* GeoIndex::folded_text(std::string_view paper_id) const {
  const auto it = folded_text_.find(paper_id);
  return it == folded_text_.end() ? nullptr : &it->second;
}

std::string format_density(const std::map<std::string, std::size_t>& grid) {
  std::string out;
  for (const auto& [cell, n] : grid) out += cell + "\t" + std::to_string(n) + "\n";
  return out;
}

std::string format_index(const GeoIndex& index) {
  std::string out;
  for (const auto& e : index.entries()) {
    out += e.paper_id + "\t" + text::escape_field(e.location) + "\t" + text::format_double(e.point.lat) +
           "\t" + text::format_double(e.point.lon) + "\t" + e.geohash + "\n";
  }
  return out;
}

}  // namespace skg::geo
