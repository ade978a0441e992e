#include "skg/service/api.hpp"

#include <algorithm>
#include <charconv>

#include "skg/classify/disciplines.hpp"
#include "skg/common/text.hpp"
#include "skg/kgstore/schema.hpp"
#include "skg/netsci/network.hpp"
#include "skg/service/views.hpp"

namespace skg::service {

using nlohmann::json;

namespace {

ApiError bad_request(std::string code, const std::string& message) {
  return ApiError(400, std::move(code), message);
}

std::size_t parse_count(const std::string& name, const std::string& value) {
  std::size_t v = 0;
  const auto res = std::from_chars(value.data(), value.data() + value.size(), v);
  if (value.empty() || res.ec != std::errc() || res.ptr != value.data() + value.size()) {
    throw bad_request("bad_parameter", name + " must be a non-negative integer");
  }
  return v;
}

json box_json(const std::optional<geo::BBox>& b) {
  if (!b) return nullptr;
  return json::array({b->lat_min, b->lon_min, b->lat_max, b->lon_max});
}

std::vector<std::string> discipline_list(const Snapshot& s, const std::string& id) {
  std::vector<std::string> out;
  const auto it = s.disciplines.find(id);
  if (it == s.disciplines.end()) return out;
  for (auto l : it->second) out.emplace_back(classify::discipline_names()[l]);
  return out;
}

json node_json(const kg::NodeKey& k) {
  return {{"kind", std::string(kg::to_string(k.kind))}, {"id", k.id}};
}

kg::NodeSelector parse_selector(const json& j, const std::string& where) {
  kg::NodeSelector sel;
  if (j.is_null()) return sel;
  if (!j.is_object()) throw bad_request("bad_query", where + " must be an object");
  for (const auto& [key, value] : j.items()) {
    if (key == "kind") {
      if (!value.is_string()) throw bad_request("bad_query", where + ".kind must be a string");
      sel.kind = kg::parse_concept(value.get<std::string>());
      if (!sel.kind) throw bad_request("unknown_kind", "unknown concept kind '" + value.get<std::string>() + "'");
    } else if (key == "id") {
      if (!value.is_string()) throw bad_request("bad_query", where + ".id must be a string");
      sel.id = value.get<std::string>();
    } else if (key == "properties") {
      if (!value.is_object()) throw bad_request("bad_query", where + ".properties must be an object");
      for (const auto& [pk, pv] : value.items()) {
        if (!pv.is_string()) throw bad_request("bad_query", where + ".properties values must be strings");
        sel.properties[pk] = pv.get<std::string>();
      }
    } else {
      throw bad_request("bad_query", "unknown field '" + key + "' in " + where);
    }
  }
  return sel;
}

json error_body(const ApiError& e) {
  return {{"error", {{"status", e.status()}, {"code", e.code()}, {"message", e.what()}}}};
}

}  // namespace

geo::BBox parse_box(std::string_view s) {
  const auto parts = text::split(s, ',');
  if (parts.size() != 4) throw bad_request("bad_box", "box must be south,west,north,east");
  double v[4];
  for (std::size_t i = 0; i < 4; ++i) {
    try {
      v[i] = text::parse_double(parts[i]);
    } catch (const Error&) {
      throw bad_request("bad_box", "box coordinate '" + parts[i] + "' is not a number");
    }
  }
  const geo::BBox box{v[0], v[2], v[1], v[3]};
  if (!box.valid()) throw bad_request("bad_box", "box is out of range or has south > north");
  return box;
}

SearchQuery parse_search_query(const std::map<std::string, std::string>& params) {
  SearchQuery q;
  for (const auto& [key, value] : params) {
    if (key == "keyword") {
      q.keyword = value;
    } else if (key == "discipline") {
      if (text::trim(value).empty()) continue;
      q.discipline = classify::parse_discipline(value);
      if (!q.discipline) throw bad_request("unknown_discipline", "unknown discipline '" + value + "'");
    } else if (key == "box") {
      q.box = parse_box(value);
    } else if (key == "offset") {
      q.offset = parse_count(key, value);
    } else if (key == "limit") {
      q.limit = parse_count(key, value);
    } else {
      throw bad_request("unknown_parameter", "unknown parameter '" + key + "'");
    }
  }
  if (q.limit == 0 || q.limit > kMaxLimit) {
    throw bad_request("bad_parameter", "limit must be between 1 and " + std::to_string(kMaxLimit));
  }
  if (text::trim(q.keyword).empty() && !q.box) {
    throw bad_request("missing_keyword", "keyword is required unless a box is given");
  }
  return q;
}

SearchResult search(const Snapshot& s, const SearchQuery& q) {
  const std::string needle = text::fold(text::trim(q.keyword));
  std::vector<std::string> in_box;
  if (q.box) in_box = s.geo.bbox_search(*q.box);

  std::vector<std::size_t> hits;
  for (std::size_t i = 0; i < s.corpus.papers.size(); ++i) {
    const auto& p = s.corpus.papers[i];
    if (!needle.empty() && s.folded_text[i].find(needle) == std::string::npos) continue;
    if (q.discipline) {
      const auto it = s.disciplines.find(p.paper_id);
      if (it == s.disciplines.end() ||
          std::find(it->second.begin(), it->second.end(), *q.discipline) == it->second.end()) {
        continue;
      }
    }
    if (q.box && !std::binary_search(in_box.begin(), in_box.end(), p.paper_id)) continue;
    hits.push_back(i);
  }
  // papers are sorted by id, so a stable sort on year keeps ids ascending
  std::stable_sort(hits.begin(), hits.end(), [&](std::size_t a, std::size_t b) {
    return s.corpus.papers[a].year > s.corpus.papers[b].year;
  });

  SearchResult r;
  r.total = hits.size();
  for (std::size_t k = q.offset; k < hits.size() && r.items.size() < q.limit; ++k) {
    const auto& p = s.corpus.papers[hits[k]];
    r.items.push_back({p.paper_id, p.title, p.year, discipline_list(s, p.paper_id),
                       s.geo.geohashes_of(p.paper_id)});
  }
  return r;
}

json search_json(const SearchQuery& q, const SearchResult& r) {
  json items = json::array();
  for (const auto& it : r.items) {
    items.push_back({{"id", it.id},
                     {"title", it.title},
                     {"year", it.year},
                     {"disciplines", it.disciplines},
                     {"geohashes", it.geohashes}});
  }
  json discipline = nullptr;
  if (q.discipline) discipline = std::string(classify::discipline_names()[*q.discipline]);
  return {{"api_version", kApiVersion},
          {"query",
           {{"keyword", q.keyword},
            {"discipline", discipline},
            {"box", box_json(q.box)},
            {"offset", q.offset},
            {"limit", q.limit}}},
          {"total", r.total},
          {"items", items}};
}

json density_json(const Snapshot& s, std::size_t precision) {
  if (precision < 1 || precision > 6) {
    throw bad_request("bad_parameter", "precision must be between 1 and 6");
  }
  json cells = json::array();
  std::size_t total = 0;
  for (const auto& [hash, count] : s.geo.density_grid(precision)) {
    const auto cell = geo::decode(hash);
    cells.push_back({{"geohash", hash},
                     {"count", count},
                     {"lat", (cell.lat_min + cell.lat_max) / 2},
                     {"lon", (cell.lon_min + cell.lon_max) / 2}});
    total += count;
  }
  return {{"api_version", kApiVersion}, {"precision", precision}, {"total", total}, {"cells", cells}};
}

json paper_json(const Snapshot& s, const std::string& id) {
  const auto* p = s.corpus.find_paper(id);
  if (!p) throw ApiError(404, "not_found", "no paper with id '" + id + "'");

  json authors = json::array();
  for (const auto& a : p->author_ids) {
    authors.push_back({{"id", a}, {"name", s.corpus.authors[s.author_index.at(a)].display_name}});
  }
  json orgs = json::array();
  for (const auto& o : p->org_ids) {
    orgs.push_back({{"id", o}, {"name", s.corpus.orgs[s.org_index.at(o)].display_name}});
  }
  json venue = nullptr;
  if (p->venue_id) {
    const auto& v = s.corpus.venues[s.venue_index.at(*p->venue_id)];
    venue = {{"id", v.id}, {"name", v.display_name}, {"kind", std::string(corpus::to_string(v.kind))}};
  }
  const kg::NodeKey key{kg::ConceptKind::paper, p->paper_id};
  const auto prop = [&](const kg::NodeKey& k, const std::string& name) -> json {
    const auto* n = s.graph.find_node(k);
    if (!n) return nullptr;
    const auto it = n->properties.find(name);
    return it == n->properties.end() ? json(nullptr) : json(it->second);
  };
  json knowledge = json::array();
  for (const auto& k : s.graph.out_neighbors(key, kg::RelationKind::mention_knowledge)) {
    knowledge.push_back({{"id", k.id}, {"name", prop(k, "name")}});
  }
  json locations = json::array();
  for (const auto& l : s.graph.out_neighbors(key, kg::RelationKind::mention_location)) {
    const auto* n = s.graph.find_node(l);
    locations.push_back({{"name", l.id},
                         {"lat", text::parse_double(n->properties.at("lat"))},
                         {"lon", text::parse_double(n->properties.at("lon"))},
                         {"geohash", n->properties.at("geohash")}});
  }
  json provenance = json::array();
  for (const auto& pr : p->provenance) {
    provenance.push_back({{"source", std::string(corpus::to_string(pr.source))}, {"id", pr.external_id}});
  }
  return {{"api_version", kApiVersion},
          {"id", p->paper_id},
          {"title", p->title},
          {"abstract", p->abstract},
          {"year", p->year},
          {"doi", p->doi ? json(*p->doi) : json(nullptr)},
          {"type", std::string(corpus::to_string(p->type))},
          {"authors", authors},
          {"organizations", orgs},
          {"venue", venue},
          {"disciplines", discipline_list(s, p->paper_id)},
          {"knowledge", knowledge},
          {"locations", locations},
          {"geohashes", s.geo.geohashes_of(p->paper_id)},
          {"cited_by", s.graph.out_neighbors(key, kg::RelationKind::is_cited_by).size()},
          {"cites", s.graph.in_neighbors(key, kg::RelationKind::is_cited_by).size()},
          {"provenance", provenance}};
}

json health_json(const Snapshot& s) {
  return {{"api_version", kApiVersion},
          {"status", "ok"},
          {"snapshot", s.id},
          {"papers", s.corpus.papers.size()},
          {"points", s.geo.size()},
          {"nodes", s.graph.nodes().size()},
          {"edges", s.graph.edges().size()}};
}

kg::PathQuery parse_path_query(const json& j) {
  if (!j.is_object()) throw bad_request("bad_query", "query must be a JSON object");
  kg::PathQuery q;
  for (const auto& [key, value] : j.items()) {
    if (key != "start" && key != "steps" && key != "end") {
      throw bad_request("bad_query", "unknown field '" + key + "'");
    }
  }
  q.start = parse_selector(j.value("start", json(nullptr)), "start");
  q.end = parse_selector(j.value("end", json(nullptr)), "end");
  if (!j.contains("steps") || !j["steps"].is_array()) {
    throw bad_request("bad_query", "steps must be an array");
  }
  for (const auto& step : j["steps"]) {
    if (!step.is_object() || !step.contains("relation") || !step["relation"].is_string()) {
      throw bad_request("bad_query", "each step needs a relation");
    }
    kg::Step st;
    const auto rel = kg::parse_relation(step["relation"].get<std::string>());
    if (!rel) throw bad_request("unknown_relation", "unknown relation '" + step["relation"].get<std::string>() + "'");
    st.relation = *rel;
    if (step.contains("direction")) {
      if (!step["direction"].is_string()) throw bad_request("bad_query", "direction must be a string");
      const auto dir = kg::parse_direction(step["direction"].get<std::string>());
      if (!dir) throw bad_request("bad_query", "direction must be \"out\" or \"in\"");
      st.direction = *dir;
    }
    q.steps.push_back(st);
  }
  if (q.steps.empty() || q.steps.size() > kg::kMaxHops) {
    throw bad_request("bad_hops", "a path has 1 to " + std::to_string(kg::kMaxHops) + " steps");
  }
  return q;
}

json traverse_json(const std::vector<kg::BindingRow>& rows) {
  json out = json::array();
  for (const auto& row : rows) {
    json r = json::array();
    for (const auto& k : row) r.push_back(node_json(k));
    out.push_back(std::move(r));
  }
  return {{"api_version", kApiVersion}, {"count", rows.size()}, {"rows", out}};
}

ApiResponse handle(const Snapshot& s, const ApiRequest& req) {
  const auto ok = [](const json& j) { return ApiResponse{200, j.dump()}; };
  const auto expect = [&](const char* method) {
    if (req.method != method) {
      throw ApiError(405, "method_not_allowed", req.method + " is not allowed on " + req.path);
    }
  };
  const auto only = [&](std::initializer_list<std::string_view> allowed) {
    for (const auto& [k, v] : req.params) {
      if (std::find(allowed.begin(), allowed.end(), k) == allowed.end()) {
        throw bad_request("unknown_parameter", "unknown parameter '" + k + "'");
      }
    }
  };
  try {
    const std::string& path = req.path;
    if (path == "/health") {
      expect("GET");
      only({});
      return ok(health_json(s));
    }
    if (path == "/search") {
      expect("GET");
      const auto q = parse_search_query(req.params);
      return ok(search_json(q, search(s, q)));
    }
    if (path == "/geo/density") {
      expect("GET");
      only({"precision"});
      const auto it = req.params.find("precision");
      return ok(density_json(s, it == req.params.end() ? 2 : parse_count("precision", it->second)));
    }
    if (path == "/kg/traverse") {
      expect("POST");
      only({});
      json body;
      try {
        body = json::parse(req.body);
      } catch (const json::exception&) {
        throw bad_request("bad_json", "request body is not valid JSON");
      }
      const auto q = parse_path_query(body);
      return ok(traverse_json(kg::traverse(s.graph, q)));
    }
    constexpr std::string_view papers = "/papers/";
    if (path.rfind(papers, 0) == 0 && path.size() > papers.size()) {
      expect("GET");
      only({});
      return ok(paper_json(s, path.substr(papers.size())));
    }
    constexpr std::string_view networks = "/networks/";
    constexpr std::string_view stats = "/stats";
    if (path.rfind(networks, 0) == 0 && path.size() > networks.size() + stats.size() &&
        path.compare(path.size() - stats.size(), stats.size(), stats) == 0) {
      expect("GET");
      only({});
      const std::string kind =
          path.substr(networks.size(), path.size() - networks.size() - stats.size());
      if (!netsci::parse_network_kind(kind)) {
        throw ApiError(404, "not_found", "unknown network kind '" + kind + "'");
      }
      const auto it = s.network_stats.find(kind);
      if (it == s.network_stats.end()) {
        throw ApiError(404, "not_found", "no statistics for network '" + kind + "'");
      }
      return ok(json::parse(it->second));
    }
    throw ApiError(404, "not_found", "no route for " + path);
  } catch (const ApiError& e) {
    return {e.status(), error_body(e).dump()};
  } catch (const Error& e) {
    const ApiError wrapped(400, "bad_request", e.what());
    return {400, error_body(wrapped).dump()};
  }
}

}  // namespace skg::service
