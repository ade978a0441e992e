#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "skg/common/error.hpp"
#include "skg/common/geo_point.hpp"

namespace skg::corpus {

/// Resolves a place name to coordinates.
class GeoCoder {
 public:
  virtual ~GeoCoder() = default;
  virtual std::optional<GeoPoint> locate(std::string_view name) const = 0;
};

/// Static name -> coordinate table; the shipped GeoCoder backend.
class Gazetteer : public GeoCoder {
 public:
  struct Entry {
    std::string name;
    GeoPoint point;
    std::vector<std::string> tokens;  // folded
  };

  Gazetteer() = default;
  explicit Gazetteer(std::vector<std::pair<std::string, GeoPoint>> entries);

  /// Tab-separated name, lat, lon. Bad lines are reported, not fatal.
  static Gazetteer load(const std::filesystem::path& path, Diagnostics* warnings = nullptr);

  std::optional<GeoPoint> locate(std::string_view name) const override;

  const std::vector<Entry>& entries() const { return entries_; }
  /// Entries whose first token is `token`.
  const std::vector<std::size_t>* starting_with(const std::string& token) const;
  bool empty() const { return entries_.empty(); }

 private:
  void add(std::string name, GeoPoint point);

  std::vector<Entry> entries_;
  std::map<std::string, std::size_t> by_key_;
  std::map<std::string, std::vector<std::size_t>> by_first_token_;
};

}  // namespace skg::corpus
