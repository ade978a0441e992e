#pragma once

#include <filesystem>
#include <fstream>
#include <string>

#include "skg/kgstore/graph.hpp"

namespace skg::kg {

/// Append-only on-disk log of upserts. Each line is one record:
///   N <TAB> kind <TAB> id [<TAB> key <TAB> value]...
///   E <TAB> kind <TAB> id <TAB> relation <TAB> kind <TAB> id [<TAB> paper_id]
/// Fields use backslash escapes. Replaying the log through the idempotent
/// upserts rebuilds the graph.
std::string log_record(const Node& n);
std::string log_record(const Edge& e);

class GraphLogWriter {
 public:
  /// Opens for append, writing the header when the file is new.
  explicit GraphLogWriter(const std::filesystem::path& path);
  void append(const Node& n);
  void append(const Edge& e);
  void flush();

 private:
  std::filesystem::path path_;
  std::ofstream out_;
};

/// Writes a compacted log (all nodes, then all edges) atomically.
void save_graph(const KnowledgeGraph& g, const std::filesystem::path& path);

/// Replays a log. Throws with the line number on a malformed record or a
/// schema violation.
KnowledgeGraph load_graph(const std::filesystem::path& path, const Schema& schema = default_schema());

}  // namespace skg::kg
