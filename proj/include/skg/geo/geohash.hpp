#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "skg/common/geo_point.hpp"

namespace skg::geo {

inline constexpr std::size_t kMaxPrecision = 12;
inline constexpr std::string_view kBase32 = "0123456789bcdefghjkmnpqrstuvwxyz";

/// Closed latitude/longitude box. lon_min > lon_max denotes a box that
/// crosses the antimeridian.
struct BBox {
  double lat_min = -90.0;
  double lat_max = 90.0;
  double lon_min = -180.0;
  double lon_max = 180.0;

  bool valid() const;
  bool crosses_antimeridian() const { return lon_min > lon_max; }
  bool contains(const GeoPoint& p) const;
  /// Non-crossing pieces (one, or two for an antimeridian box).
  std::vector<BBox> split() const;

  friend bool operator==(const BBox&, const BBox&) = default;
};

inline BBox whole_earth() { return {}; }

/// Standard interleaved bisection (longitude first); a coordinate on a
/// bisection midpoint goes to the upper half. Throws on an invalid point or
/// a precision outside 1-12.
std::string encode(const GeoPoint& p, std::size_t precision);

/// Cell of a geohash. Throws on an empty, over-long or non-alphabet hash.
BBox decode(std::string_view hash);

/// Longitude and latitude bit counts at a precision.
std::size_t lon_bits(std::size_t precision);
std::size_t lat_bits(std::size_t precision);

/// Geohash of the cell with column `ix` (longitude) and row `iy` (latitude)
/// at the given precision.
std::string cell_hash(std::uint64_t ix, std::uint64_t iy, std::size_t precision);

/// Geohash cells at `precision` that together cover a non-crossing box.
std::vector<std::string> cover(const BBox& box, std::size_t precision);

/// Number of cells cover() would return.
std::uint64_t cover_size(const BBox& box, std::size_t precision);

}  // namespace skg::geo
