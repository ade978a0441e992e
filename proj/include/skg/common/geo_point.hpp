#pragma once

#include <cmath>

namespace skg {

/// WGS84 coordinates in degrees.
struct GeoPoint {
  double lat = 0.0;
  double lon = 0.0;

  bool valid() const {
    return std::isfinite(lat) && std::isfinite(lon) && lat >= -90.0 &&
           lat <= 90.0 && lon >= -180.0 && lon <= 180.0;
  }

  friend bool operator==(const GeoPoint&, const GeoPoint&) = default;
};

}  // namespace skg
