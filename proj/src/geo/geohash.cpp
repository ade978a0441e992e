#include "skg/geo/geohash.hpp"

#include <algorithm>
#include <cmath>

#include "skg/common/error.hpp"

namespace skg::geo {
namespace {

void check_precision(std::size_t precision) {
  if (precision < 1 || precision > kMaxPrecision) {
    throw Error("geohash precision must be in 1-12, got " + std::to_string(precision));
  }
}

int char_value(char c) {
  const auto pos = kBase32.find(c);
  return pos == std::string_view::npos ? -1 : static_cast<int>(pos);
}

// Column range of [lo, hi] among `cells` equal cells spanning [origin, origin+extent],
// widened by one to absorb rounding at cell edges.
std::pair<std::uint64_t, std::uint64_t> index_range(double lo, double hi, double origin,
                                                    double extent, std::uint64_t cells) {
  const double w = extent / static_cast<double>(cells);
  const auto clamp = [&](double v) {
    return static_cast<std::uint64_t>(std::clamp(v, 0.0, static_cast<double>(cells - 1)));
  };
  return {clamp(std::floor((lo - origin) / w) - 1.0), clamp(std::floor((hi - origin) / w) + 1.0)};
}

}  // namespace

bool BBox::valid() const {
  const bool finite = std::isfinite(lat_min) && std::isfinite(lat_max) && std::isfinite(lon_min) &&
                      std::isfinite(lon_max);
  return finite && lat_min >= -90.0 && lat_max <= 90.0 && lat_min <= lat_max &&
         lon_min >= -180.0 && lon_min <= 180.0 && lon_max >= -180.0 && lon_max <= 180.0;
}

bool BBox::contains(const GeoPoint& p) const {
  if (p.lat < lat_min || p.lat > lat_max) return false;
  if (crosses_antimeridian()) return p.lon >= lon_min || p.lon <= lon_max;
  return p.lon >= lon_min && p.lon <= lon_max;
}

std::vector<BBox> BBox::split() const {
  if (!crosses_antimeridian()) return {*this};
  return {{lat_min, lat_max, lon_min, 180.0}, {lat_min, lat_max, -180.0, lon_max}};
}

std::string encode(const GeoPoint& p, std::size_t precision) {
  if (!p.valid()) throw Error("geohash: coordinates out of range");
  check_precision(precision);
  double lat_lo = -90.0, lat_hi = 90.0, lon_lo = -180.0, lon_hi = 180.0;
  std::string out;
  bool even = true;
  int bit = 0;
  int ch = 0;
  while (out.size() < precision) {
    double& lo = even ? lon_lo : lat_lo;
    double& hi = even ? lon_hi : lat_hi;
    const double v = even ? p.lon : p.lat;
    const double mid = (lo + hi) / 2.0;
    ch <<= 1;
    if (v >= mid) {
      ch |= 1;
      lo = mid;
    } else {
      hi = mid;
    }
    even = !even;
    if (++bit == 5) {
      out.push_back(kBase32[static_cast<std::size_t>(ch)]);
      bit = 0;
      ch = 0;
    }
  }
  return out;
}

BBox decode(std::string_view hash) {
  if (hash.empty() || hash.size() > kMaxPrecision) throw Error("geohash: length must be 1-12");
  BBox b;
  bool even = true;
  for (const char c : hash) {
    const int v = char_value(c);
    if (v < 0) throw Error(std::string("geohash: invalid character '") + c + "'");
    for (int shift = 4; shift >= 0; --shift) {
      const bool upper = (v >> shift) & 1;
      double& lo = even ? b.lon_min : b.lat_min;
      double& hi = even ? b.lon_max : b.lat_max;
      const double mid = (lo + hi) / 2.0;
      (upper ? lo : hi) = mid;
      even = !even;
    }
  }
  return b;
}

std::size_t lon_bits(std::size_t precision) { return (5 * precision + 1) / 2; }
std::size_t lat_bits(std::size_t precision) { return 5 * precision / 2; }

std::string cell_hash(std::uint64_t ix, std::uint64_t iy, std::size_t precision) {
  check_precision(precision);
  std::size_t lx = lon_bits(precision);
  std::size_t ly = lat_bits(precision);
  std::string out;
  int ch = 0;
  int bit = 0;
  bool even = true;
  while (lx + ly > 0) {
    ch <<= 1;
    if (even) {
      ch |= static_cast<int>((ix >> --lx) & 1);
    } else {
      ch |= static_cast<int>((iy >> --ly) & 1);
    }
    even = !even;
    if (++bit == 5) {
      out.push_back(kBase32[static_cast<std::size_t>(ch)]);
      ch = 0;
      bit = 0;
    }
  }
  return out;
}

std::uint64_t cover_size(const BBox& box, std::size_t precision) {
  check_precision(precision);
  const std::uint64_t nx = 1ULL << lon_bits(precision);
  const std::uint64_t ny = 1ULL << lat_bits(precision);
  const auto [x0, x1] = index_range(box.lon_min, box.lon_max, -180.0, 360.0, nx);
  const auto [y0, y1] = index_range(box.lat_min, box.lat_max, -90.0, 180.0, ny);
  return (x1 - x0 + 1) * (y1 - y0 + 1);
}

std::vector<std::string> cover(const BBox& box, std::size_t precision) {
  if (box.crosses_antimeridian()) throw Error("cover: split antimeridian boxes first");
  check_precision(precision);
  const std::uint64_t nx = 1ULL << lon_bits(precision);
  const std::uint64_t ny = 1ULL << lat_bits(precision);
  const auto [x0, x1] = index_range(box.lon_min, box.lon_max, -180.0, 360.0, nx);
  const auto [y0, y1] = index_range(box.lat_min, box.lat_max, -90.0, 180.0, ny);
  std::vector<std::string> out;
  for (std::uint64_t x = x0; x <= x1; ++x) {
    for (std::uint64_t y = y0; y <= y1; ++y) out.push_back(cell_hash(x, y, precision));
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace skg::geo
