#include "skg/kgstore/graph_log.hpp"

#include "skg/common/io.hpp"
#include "skg/common/text.hpp"

namespace skg::kg {
namespace {

constexpr std::string_view kHeader = "skg-graph-log 1";

std::string key_fields(const NodeKey& k) {
  return std::string(to_string(k.kind)) + "\t" + text::escape_field(k.id);
}

NodeKey parse_key(const std::string& kind, const std::string& id) {
  const auto k = parse_concept(kind);
  if (!k) throw Error("unknown concept '" + kind + "'");
  return {*k, text::unescape_field(id)};
}

}  // namespace

std::string log_record(const Node& n) {
  std::string out = "N\t" + key_fields(n.key);
  for (const auto& [k, v] : n.properties) {
    out += "\t" + text::escape_field(k) + "\t" + text::escape_field(v);
  }
  return out;
}

std::string log_record(const Edge& e) {
  std::string out = "E\t" + key_fields(e.key.source) + "\t" + std::string(to_string(e.key.kind)) +
                    "\t" + key_fields(e.key.target);
  if (e.provenance) out += "\t" + text::escape_field(*e.provenance);
  return out;
}

GraphLogWriter::GraphLogWriter(const std::filesystem::path& path) : path_(path) {
  const bool fresh = !std::filesystem::exists(path) || std::filesystem::file_size(path) == 0;
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  out_.open(path, std::ios::app | std::ios::binary);
  if (!out_) throw IoError("cannot open graph log " + path.string());
  if (fresh) out_ << kHeader << '\n';
}

void GraphLogWriter::append(const Node& n) { out_ << log_record(n) << '\n'; }
void GraphLogWriter::append(const Edge& e) { out_ << log_record(e) << '\n'; }

void GraphLogWriter::flush() {
  out_.flush();
  if (!out_) throw IoError("write failed on graph log " + path_.string());
}

void save_graph(const KnowledgeGraph& g, const std::filesystem::path& path) {
  std::string out(kHeader);
  out += '\n';
  for (const auto& [key, node] : g.nodes()) out += log_record(node) + "\n";
  for (const auto& [key, prov] : g.edges()) out += log_record(Edge{key, prov}) + "\n";
  io::write_file(path, out);
}

KnowledgeGraph load_graph(const std::filesystem::path& path, const Schema& schema) {
  const auto lines = io::read_lines(path);
  if (lines.empty() || lines.front() != kHeader) {
    throw Error(path.string() + ": not a graph log");
  }
  KnowledgeGraph g(schema);
  for (std::size_t i = 1; i < lines.size(); ++i) {
    if (lines[i].empty()) continue;
    try {
      const auto f = text::split(lines[i], '\t');
      if (f[0] == "N" && f.size() >= 3 && (f.size() - 3) % 2 == 0) {
        Node n{parse_key(f[1], f[2]), {}};
        for (std::size_t p = 3; p < f.size(); p += 2) {
          n.properties[text::unescape_field(f[p])] = text::unescape_field(f[p + 1]);
        }
        g.upsert_node(n);
      } else if (f[0] == "E" && (f.size() == 6 || f.size() == 7)) {
        const auto rel = parse_relation(f[3]);
        if (!rel) throw Error("unknown relation '" + f[3] + "'");
        Edge e{{parse_key(f[1], f[2]), *rel, parse_key(f[4], f[5])}, std::nullopt};
        if (f.size() == 7) e.provenance = text::unescape_field(f[6]);
        g.upsert_edge(e);
      } else {
        throw Error("malformed record");
      }
    } catch (const Error& e) {
      throw Error(path.string() + ":" + std::to_string(i + 1) + ": " + e.what());
    }
  }
  return g;
}

}  // namespace skg::kg
