#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "skg/common/error.hpp"
#include "skg/geo/geohash.hpp"
#include "skg/kgstore/traverse.hpp"
#include "skg/service/snapshot.hpp"

namespace skg::service {

inline constexpr std::size_t kDefaultLimit = 20;
inline constexpr std::size_t kMaxLimit = 500;

/// A request the API rejects; carries the HTTP status and a stable code.
class ApiError : public Error {
 public:
  ApiError(int status, std::string code, const std::string& message)
      : Error(message), status_(status), code_(std::move(code)) {}
  int status() const { return status_; }
  const std::string& code() const { return code_; }

 private:
  int status_;
  std::string code_;
};

struct SearchQuery {
  std::string keyword;
  std::optional<std::size_t> discipline;
  std::optional<geo::BBox> box;
  std::size_t offset = 0;
  std::size_t limit = kDefaultLimit;
};

struct PaperSummary {
  std::string id;
  std::string title;
  int year = 0;
  std::vector<std::string> disciplines;  // names, in label order
  std::vector<std::string> geohashes;
};

struct SearchResult {
  std::vector<PaperSummary> items;
  std::size_t total = 0;
};

/// "south,west,north,east" in degrees; west > east crosses the antimeridian.
geo::BBox parse_box(std::string_view s);

/// Validates and reads /search parameters.
SearchQuery parse_search_query(const std::map<std::string, std::string>& params);

/// Conjunction of a case-insensitive substring match on title and abstract,
/// the discipline and the box; ordered by year descending, then id.
SearchResult search(const Snapshot& s, const SearchQuery& q);

nlohmann::json search_json(const SearchQuery& q, const SearchResult& r);
nlohmann::json density_json(const Snapshot& s, std::size_t precision);
nlohmann::json paper_json(const Snapshot& s, const std::string& id);
nlohmann::json health_json(const Snapshot& s);

kg::PathQuery parse_path_query(const nlohmann::json& j);
nlohmann::json traverse_json(const std::vector<kg::BindingRow>& rows);

struct ApiRequest {
  std::string method;
  std::string path;
  std::map<std::string, std::string> params;
  std::string body;
};

struct ApiResponse {
  int status = 200;
  std::string body;
};

/// Routes a request. Pure: the same request against the same snapshot
/// yields the same bytes. Errors come back as
/// {"error": {"status", "code", "message"}} with a 4xx status.
ApiResponse handle(const Snapshot& s, const ApiRequest& req);

}  // namespace skg::service
