#include "skg/corpus/records.hpp"

#include <algorithm>
#include <array>

#include <json.hpp>

#include "skg/common/error.hpp"
#include "skg/common/io.hpp"
#include "skg/common/text.hpp"

namespace skg::corpus {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr std::array<std::string_view, 4> kSourceNames{"acemap", "cord19", "digsci", "preprint"};
constexpr std::array<std::string_view, 3> kTypeNames{"article", "proceeding", "preprint"};
constexpr std::array<std::string_view, 3> kVenueNames{"journal", "conference", "preprint"};

template <typename E, std::size_t N>
std::optional<E> parse_enum(const std::array<std::string_view, N>& names, std::string_view s) {
  for (std::size_t i = 0; i < N; ++i) {
    if (names[i] == s) return static_cast<E>(i);
  }
  return std::nullopt;
}

json entity_json(const CanonicalEntity& e) {
  return json{{"id", e.id},
              {"display_name", e.display_name},
              {"normalized_key", e.normalized_key},
              {"aliases", e.aliases}};
}

void entity_from_json(const json& j, CanonicalEntity& e) {
  e.id = j.at("id").get<std::string>();
  e.display_name = j.at("display_name").get<std::string>();
  e.normalized_key = j.at("normalized_key").get<std::string>();
  e.aliases = j.at("aliases").get<std::set<std::string>>();
}

json paper_json(const PaperRecord& p) {
  json prov = json::array();
  for (const auto& pr : p.provenance) prov.push_back({to_string(pr.source), pr.external_id});
  return json{{"paper_id", p.paper_id},
              {"doi", p.doi ? json(*p.doi) : json(nullptr)},
              {"title", p.title},
              {"abstract", p.abstract},
              {"year", p.year},
              {"type", to_string(p.type)},
              {"author_ids", p.author_ids},
              {"org_ids", p.org_ids},
              {"venue_id", p.venue_id ? json(*p.venue_id) : json(nullptr)},
              {"provenance", prov}};
}

PaperRecord paper_from_json(const json& j) {
  PaperRecord p;
  p.paper_id = j.at("paper_id").get<std::string>();
  if (!j.at("doi").is_null()) p.doi = j.at("doi").get<std::string>();
  p.title = j.at("title").get<std::string>();
  p.abstract = j.at("abstract").get<std::string>();
  p.year = j.at("year").get<int>();
  const auto type = parse_paper_type(j.at("type").get<std::string>());
  if (!type) throw Error("papers.jsonl: bad type for " + p.paper_id);
  p.type = *type;
  p.author_ids = j.at("author_ids").get<std::vector<std::string>>();
  p.org_ids = j.at("org_ids").get<std::vector<std::string>>();
  if (!j.at("venue_id").is_null()) p.venue_id = j.at("venue_id").get<std::string>();
  for (const auto& pr : j.at("provenance")) {
    const auto src = parse_source_id(pr.at(0).get<std::string>());
    if (!src) throw Error("papers.jsonl: bad provenance source for " + p.paper_id);
    p.provenance.insert({*src, pr.at(1).get<std::string>()});
  }
  return p;
}

template <typename T, typename F>
std::vector<T> read_jsonl(const fs::path& path, F&& parse) {
  std::vector<T> out;
  std::size_t line_no = 0;
  for (const auto& line : io::read_lines(path)) {
    ++line_no;
    if (text::trim(line).empty()) continue;
    try {
      out.push_back(parse(json::parse(line)));
    } catch (const json::exception& e) {
      throw Error(path.string() + ":" + std::to_string(line_no) + ": " + e.what());
    }
  }
  return out;
}

}  // namespace

std::string_view to_string(SourceId s) { return kSourceNames[static_cast<std::size_t>(s)]; }
std::string_view to_string(PaperType t) { return kTypeNames[static_cast<std::size_t>(t)]; }
std::string_view to_string(VenueKind k) { return kVenueNames[static_cast<std::size_t>(k)]; }

std::optional<SourceId> parse_source_id(std::string_view s) {
  return parse_enum<SourceId>(kSourceNames, s);
}
std::optional<PaperType> parse_paper_type(std::string_view s) {
  return parse_enum<PaperType>(kTypeNames, s);
}
std::optional<VenueKind> parse_venue_kind(std::string_view s) {
  return parse_enum<VenueKind>(kVenueNames, s);
}

const PaperRecord* FusedCorpus::find_paper(std::string_view paper_id) const {
  const auto it = std::lower_bound(
      papers.begin(), papers.end(), paper_id,
      [](const PaperRecord& p, std::string_view id) { return p.paper_id < id; });
  return (it != papers.end() && it->paper_id == paper_id) ? &*it : nullptr;
}

void write_corpus(const fs::path& dir, const FusedCorpus& corpus) {
  std::string papers;
  for (const auto& p : corpus.papers) papers += paper_json(p).dump() + "\n";
  io::write_file(dir / "papers.jsonl", papers);

  const auto dump_entities = [&](const auto& entities, const char* name) {
    std::string out;
    for (const auto& e : entities) out += entity_json(e).dump() + "\n";
    io::write_file(dir / name, out);
  };
  dump_entities(corpus.authors, "authors.jsonl");
  dump_entities(corpus.orgs, "orgs.jsonl");

  std::string venues;
  for (const auto& v : corpus.venues) {
    json j = entity_json(v);
    j["kind"] = to_string(v.kind);
    venues += j.dump() + "\n";
  }
  io::write_file(dir / "venues.jsonl", venues);

  std::string aff;
  for (const auto& [author, org] : corpus.affiliations) aff += author + "\t" + org + "\n";
  io::write_file(dir / "affiliations.tsv", aff);

  std::string conflicts;
  for (const auto& c : corpus.conflicts) conflicts += c + "\n";
  io::write_file(dir / "conflicts.txt", conflicts);
}

FusedCorpus read_corpus(const fs::path& dir) {
  FusedCorpus c;
  c.papers = read_jsonl<PaperRecord>(dir / "papers.jsonl", paper_from_json);
  const auto parse_entity = [](const json& j) {
    CanonicalEntity e;
    entity_from_json(j, e);
    return e;
  };
  c.authors = read_jsonl<CanonicalAuthor>(dir / "authors.jsonl", parse_entity);
  c.orgs = read_jsonl<CanonicalOrg>(dir / "orgs.jsonl", parse_entity);
  c.venues = read_jsonl<CanonicalVenue>(dir / "venues.jsonl", [](const json& j) {
    CanonicalVenue v;
    entity_from_json(j, v);
    const auto kind = parse_venue_kind(j.at("kind").get<std::string>());
    if (!kind) throw Error("venues.jsonl: bad kind for " + v.id);
    v.kind = *kind;
    return v;
  });
  for (const auto& line : io::read_lines(dir / "affiliations.tsv")) {
    const auto f = text::split(line, '\t');
    if (f.size() != 2) throw Error("affiliations.tsv: malformed line");
    c.affiliations.emplace(f[0], f[1]);
  }
  if (fs::exists(dir / "conflicts.txt")) c.conflicts = io::read_lines(dir / "conflicts.txt");
  return c;
}

void write_locations(const fs::path& path, const std::vector<LocationMention>& mentions) {
  std::string out;
  for (const auto& m : mentions) {
    out += m.paper_id + "\t" + text::escape_field(m.surface) + "\t" +
           text::escape_field(m.canonical_name) + "\t" + text::format_double(m.lat) +
           "\t" + text::format_double(m.lon) + "\n";
  }
  io::write_file(path, out);
}

std::vector<LocationMention> read_locations(const fs::path& path) {
  std::vector<LocationMention> out;
  std::size_t line_no = 0;
  for (const auto& line : io::read_lines(path)) {
    ++line_no;
    const auto f = text::split(line, '\t');
    if (f.size() != 5) {
      throw Error(path.string() + ":" + std::to_string(line_no) + ": expected 5 fields");
    }
    out.push_back({f[0], text::unescape_field(f[1]), text::unescape_field(f[2]),
                   text::parse_double(f[3]), text::parse_double(f[4])});
  }
  return out;
}

}  // namespace skg::corpus
