#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "skg/corpus/records.hpp"
#include "skg/geo/geohash.hpp"

namespace skg::geo {

inline constexpr std::size_t kIndexPrecision = 7;

struct GeoEntry {
  std::string paper_id;
  std::string location;  // canonical gazetteer name
  GeoPoint point;
  std::string geohash;   // kIndexPrecision characters
};

/// Location points of papers, ordered by geohash so that a cell is a
/// contiguous key range. Immutable once built.
class GeoIndex {
 public:
  GeoIndex() = default;
  /// Every mention's paper must be in `corpus`; coordinates must be valid.
  GeoIndex(const std::vector<corpus::LocationMention>& mentions, const corpus::FusedCorpus& corpus);

  const std::vector<GeoEntry>& entries() const { return entries_; }  // sorted by geohash
  std::size_t size() const { return entries_.size(); }

  /// Paper ids (sorted, distinct) with at least one point inside the closed
  /// box whose title or abstract contains the keyword case-insensitively.
  /// An absent or blank keyword does not filter.
  std::vector<std::string> bbox_search(const BBox& box,
                                       std::optional<std::string_view> keyword = std::nullopt) const;

  /// Points per geohash prefix cell, precision 1-6.
  std::map<std::string, std::size_t> density_grid(std::size_t precision) const;

  /// Sorted distinct precision-7 geohashes of a paper's points.
  std::vector<std::string> geohashes_of(std::string_view paper_id) const;

  /// Folded title + abstract of an indexed paper, or null.
  const std::string* folded_text(std::string_view paper_id) const;

 private:
  void search_piece(const BBox& box, std::vector<std::string>& hits) const;

  std::vector<GeoEntry> entries_;
  std::map<std::string, std::string, std::less<>> folded_text_;
  std::map<std::string, std::vector<std::string>, std::less<>> hashes_by_paper_;
};

/// Lines "geohash<TAB>count".
std::string format_density(const std::map<std::string, std::size_t>& grid);

/// Lines "paper_id<TAB>location<TAB>lat<TAB>lon<TAB>geohash".
std::string format_index(const GeoIndex& index);

/// Coarsest-to-finest precision choice for covering a box with at most
/// `max_cells` cells.
std::size_t cover_precision(const BBox& box, std::uint64_t max_cells = 64);

}  // namespace skg::geo
