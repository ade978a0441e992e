#include "skg/kgstore/ntriples.hpp"

#include <cstdio>
#include <vector>

#include "skg/common/io.hpp"
#include "skg/common/text.hpp"

namespace skg::kg {
namespace {

bool unreserved(unsigned char c) {
  return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') ||
         c == '-' || c == '.' || c == '_' || c == '~';
}

int hex_value(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'A' && c <= 'F') return c - 'A' + 10;
  if (c >= 'a' && c <= 'f') return c - 'a' + 10;
  return -1;
}

// Splits "<a> <b> <c> ." into the three IRIs.
std::vector<std::string> parse_line(std::string_view line, std::size_t line_no) {
  std::vector<std::string> iris;
  std::size_t i = 0;
  const auto fail = [&] { return Error("n-triples line " + std::to_string(line_no) + ": malformed"); };
  while (iris.size() < 3) {
    while (i < line.size() && line[i] == ' ') ++i;
    if (i >= line.size() || line[i] != '<') throw fail();
    const auto close = line.find('>', i);
    if (close == std::string_view::npos) throw fail();
    iris.emplace_back(line.substr(i + 1, close - i - 1));
    i = close + 1;
  }
  if (text::trim(line.substr(i)) != ".") throw fail();
  return iris;
}

NodeKey parse_node_iri(std::string_view iri) {
  const std::string_view ns = kNamespace;
  if (!iri.starts_with(ns)) throw Error("n-triples: foreign node IRI " + std::string(iri));
  iri.remove_prefix(ns.size());
  const auto slash = iri.find('/');
  const auto kind = parse_concept(iri.substr(0, slash));
  if (slash == std::string_view::npos || !kind) {
    throw Error("n-triples: bad node IRI " + std::string(iri));
  }
  return {*kind, percent_decode(iri.substr(slash + 1))};
}

}  // namespace

std::string percent_encode(std::string_view s) {
  std::string out;
  char buf[4];
  for (const char ch : s) {
    const auto c = static_cast<unsigned char>(ch);
    if (unreserved(c)) {
      out.push_back(ch);
    } else {
      std::snprintf(buf, sizeof buf, "%%%02X", c);
      out += buf;
    }
  }
  return out;
}

std::string percent_decode(std::string_view s) {
  std::string out;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] != '%') {
      out.push_back(s[i]);
      continue;
    }
    const int hi = i + 1 < s.size() ? hex_value(s[i + 1]) : -1;
    const int lo = i + 2 < s.size() ? hex_value(s[i + 2]) : -1;
    if (hi < 0 || lo < 0) throw Error("bad percent escape in '" + std::string(s) + "'");
    out.push_back(static_cast<char>(hi * 16 + lo));
    i += 2;
  }
  return out;
}

std::string node_iri(const NodeKey& k) {
  return std::string(kNamespace) + std::string(to_string(k.kind)) + "/" + percent_encode(k.id);
}

std::string class_iri(ConceptKind k) {
  return std::string(kNamespace) + "schema/" + std::string(to_string(k));
}

std::string export_ntriples(const KnowledgeGraph& g) {
  std::string out;
  const std::string type = "<" + std::string(kRdfType) + ">";
  for (const auto& [key, node] : g.nodes()) {
    out += "<" + node_iri(key) + "> " + type + " <" + class_iri(key.kind) + "> .\n";
  }
  for (const auto& [key, prov] : g.edges()) {
    out += "<" + node_iri(key.source) + "> <" + g.schema().predicate_iri(key.kind) + "> <" +
           node_iri(key.target) + "> .\n";
  }
  return out;
}

void write_ntriples(const KnowledgeGraph& g, const std::filesystem::path& path) {
  io::write_file(path, export_ntriples(g));
}

KnowledgeGraph import_ntriples(std::string_view data, const Schema& schema) {
  KnowledgeGraph g(schema);
  std::vector<std::pair<EdgeKey, std::size_t>> pending;
  std::size_t line_no = 0;
  for (const auto& raw : text::split(data, '\n')) {
    ++line_no;
    if (text::trim(raw).empty()) continue;
    const auto iris = parse_line(raw, line_no);
    if (iris[1] == kRdfType) {
      const NodeKey key = parse_node_iri(iris[0]);
      if (iris[2] != class_iri(key.kind)) {
        throw Error("n-triples line " + std::to_string(line_no) + ": type does not match IRI");
      }
      g.upsert_node({key, {}});
      continue;
    }
    const auto rel = schema.relation_for_iri(iris[1]);
    if (!rel) throw Error("n-triples line " + std::to_string(line_no) + ": unknown predicate");
    pending.push_back({{parse_node_iri(iris[0]), *rel, parse_node_iri(iris[2])}, line_no});
  }
  for (const auto& [key, ln] : pending) g.upsert_edge({key, std::nullopt});
  return g;
}

}  // namespace skg::kg
