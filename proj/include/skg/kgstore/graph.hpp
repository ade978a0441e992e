#pragma once

#include <compare>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "skg/kgstore/schema.hpp"

namespace skg::kg {

struct NodeKey {
  ConceptKind kind = ConceptKind::paper;
  std::string id;
  friend auto operator<=>(const NodeKey&, const NodeKey&) = default;
  friend bool operator==(const NodeKey&, const NodeKey&) = default;
};

std::string to_string(const NodeKey& k);  // "kind/id"

using Properties = std::map<std::string, std::string>;

struct Node {
  NodeKey key;
  Properties properties;
};

struct EdgeKey {
  NodeKey source;
  RelationKind kind = RelationKind::is_cited_by;
  NodeKey target;
  friend auto operator<=>(const EdgeKey&, const EdgeKey&) = default;
  friend bool operator==(const EdgeKey&, const EdgeKey&) = default;
};

struct Edge {
  EdgeKey key;
  std::optional<std::string> provenance;  // paper_id the assertion came from
};

/// Raised when an edge names a node that has not been upserted.
class MissingNodeError : public Error {
 public:
  using Error::Error;
};

struct GraphStats {
  std::map<ConceptKind, std::size_t> nodes;  // every kind present, zero-filled
  std::map<RelationKind, std::size_t> edges;
  std::size_t total_nodes = 0;
  std::size_t total_edges = 0;

  friend bool operator==(const GraphStats&, const GraphStats&) = default;
};

/// Two-column text report: one row per concept, one per relation, then the
/// totals.
std::string format_stats(const GraphStats& s);

/// In-memory typed property graph. Upserts are idempotent; every stored
/// edge satisfies the schema and has both endpoints present.
class KnowledgeGraph {
 public:
  explicit KnowledgeGraph(const Schema& schema = default_schema()) : schema_(&schema) {}

  /// Inserts the node or merges its properties into the existing one (new
  /// values win). Returns true if anything changed.
  bool upsert_node(const Node& node);

  /// Returns true if the edge was new. An existing edge keeps its first
  /// provenance. Throws MissingNodeError or SchemaError.
  bool upsert_edge(const Edge& edge);

  const Node* find_node(const NodeKey& key) const;
  bool has_edge(const EdgeKey& key) const { return edges_.count(key) > 0; }

  const std::map<NodeKey, Node>& nodes() const { return nodes_; }
  const std::map<EdgeKey, std::optional<std::string>>& edges() const { return edges_; }
  const Schema& schema() const { return *schema_; }

  /// Neighbours along `kind`, outgoing or incoming, in sorted order.
  const std::vector<NodeKey>& out_neighbors(const NodeKey& n, RelationKind kind) const;
  const std::vector<NodeKey>& in_neighbors(const NodeKey& n, RelationKind kind) const;

  GraphStats stats() const;

  /// Re-verifies endpoints and signatures of every edge; returns problems.
  std::vector<std::string> check_integrity() const;

 private:
  const Schema* schema_;
  std::map<NodeKey, Node> nodes_;
  std::map<EdgeKey, std::optional<std::string>> edges_;
  std::map<std::pair<NodeKey, RelationKind>, std::vector<NodeKey>> out_;
  std::map<std::pair<NodeKey, RelationKind>, std::vector<NodeKey>> in_;
};

}  // namespace skg::kg
