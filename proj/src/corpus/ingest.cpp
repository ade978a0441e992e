#include "skg/corpus/ingest.hpp"

#include <json.hpp>

#include "skg/common/io.hpp"
#include "skg/common/text.hpp"
#include "skg/corpus/normalize.hpp"

namespace skg::corpus {

using nlohmann::json;

namespace {

std::string required_string(const json& j, const char* key) {
  if (!j.contains(key)) throw Error(std::string("missing field '") + key + "'");
  if (!j[key].is_string()) throw Error(std::string("field '") + key + "' must be a string");
  return j[key].get<std::string>();
}

std::string optional_string(const json& j, const char* key) {
  if (!j.contains(key) || j[key].is_null()) return {};
  if (!j[key].is_string()) throw Error(std::string("field '") + key + "' must be a string");
  return j[key].get<std::string>();
}

std::vector<std::string> string_list(const json& j, const char* key) {
  if (!j.contains(key) || j[key].is_null()) return {};
  if (!j[key].is_array()) throw Error(std::string("field '") + key + "' must be an array");
  std::vector<std::string> out;
  for (const auto& v : j[key]) {
    if (!v.is_string()) throw Error(std::string("field '") + key + "' must hold strings");
    out.push_back(v.get<std::string>());
  }
  return out;
}

SourceRecord parse_record(const std::string& line, SourceId source) {
  if (!text::is_valid_utf8(line)) throw Error("line is not valid UTF-8");
  const json j = json::parse(line);
  if (!j.is_object()) throw Error("line is not a JSON object");

  SourceRecord r;
  r.source = source;
  const std::string declared = optional_string(j, "source");
  if (!declared.empty() && declared != to_string(source)) {
    throw Error("source '" + declared + "' does not match feed '" +
                std::string(to_string(source)) + "'");
  }
  r.external_id = required_string(j, "id");
  if (text::trim(r.external_id).empty()) throw Error("empty id");
  if (const std::string doi = optional_string(j, "doi"); !text::trim(doi).empty()) {
    r.doi = normalize_doi(doi);
  }
  r.title = required_string(j, "title");
  r.abstract = optional_string(j, "abstract");
  if (!j.contains("year") || !j["year"].is_number_integer()) {
    throw Error("field 'year' must be an integer");
  }
  r.year = j["year"].get<int>();
  r.authors = string_list(j, "authors");
  r.org_strings = string_list(j, "orgs");
  r.venue_string = optional_string(j, "venue");
  const std::string type = required_string(j, "type");
  const auto parsed = parse_paper_type(type);
  if (!parsed) throw Error("unknown type '" + type + "'");
  r.type = *parsed;
  validate(r);
  return r;
}

}  // namespace

void validate(const SourceRecord& r) {
  if (text::trim(r.title).empty()) throw Error("empty title");
  // the title doubles as a dedup key, so it must survive normalization
  (void)normalize_name(r.title);
  if (r.year < 1900 || r.year > 2100) {
    throw Error("year " + std::to_string(r.year) + " outside [1900, 2100]");
  }
  for (const auto& a : r.authors) {
    if (text::trim(a).empty()) throw Error("empty author name");
  }
  for (const auto& o : r.org_strings) {
    if (text::trim(o).empty()) throw Error("empty organization string");
  }
}

IngestResult parse_source_lines(const std::vector<std::string>& lines, SourceId source) {
  IngestResult result;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    if (text::trim(lines[i]).empty()) continue;
    try {
      result.records.push_back(parse_record(lines[i], source));
    } catch (const json::exception& e) {
      result.warnings.push_back({i + 1, std::string("malformed JSON: ") + e.what()});
    } catch (const Error& e) {
      result.warnings.push_back({i + 1, e.what()});
    }
  }
  return result;
}

IngestResult ingest_source(const std::filesystem::path& path, SourceId source) {
  return parse_source_lines(io::read_lines(path), source);
}

std::string to_json_line(const SourceRecord& r) {
  json j{{"source", to_string(r.source)},
         {"id", r.external_id},
         {"doi", r.doi ? json(*r.doi) : json(nullptr)},
         {"title", r.title},
         {"abstract", r.abstract},
         {"year", r.year},
         {"authors", r.authors},
         {"orgs", r.org_strings},
         {"venue", r.venue_string},
         {"type", to_string(r.type)}};
  return j.dump();
}

std::string format_report(const Diagnostics& diagnostics) {
  std::string out;
  for (const auto& d : diagnostics) {
    out += "line " + std::to_string(d.line) + ": " + d.message + "\n";
  }
  return out;
}

}  // namespace skg::corpus
