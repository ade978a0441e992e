#include "skg/kgstore/graph.hpp"

#include <algorithm>
#include <cstdio>

namespace skg::kg {
namespace {

void insert_sorted(std::vector<NodeKey>& v, const NodeKey& k) {
  v.insert(std::upper_bound(v.begin(), v.end(), k), k);
}

const std::vector<NodeKey>& lookup(
    const std::map<std::pair<NodeKey, RelationKind>, std::vector<NodeKey>>& adj,
    const NodeKey& n, RelationKind kind) {
  static const std::vector<NodeKey> kEmpty;
  const auto it = adj.find({n, kind});
  return it == adj.end() ? kEmpty : it->second;
}

}  // namespace

std::string to_string(const NodeKey& k) { return std::string(to_string(k.kind)) + "/" + k.id; }

std::string format_stats(const GraphStats& s) {
  std::string out;
  char buf[128];
  for (const auto& [kind, n] : s.nodes) {
    std::snprintf(buf, sizeof buf, "concept   %-20s %zu\n", std::string(to_string(kind)).c_str(), n);
    out += buf;
  }
  for (const auto& [kind, n] : s.edges) {
    std::snprintf(buf, sizeof buf, "relation  %-20s %zu\n", std::string(to_string(kind)).c_str(), n);
    out += buf;
  }
  std::snprintf(buf, sizeof buf, "total     %-20s %zu\ntotal     %-20s %zu\n", "entities",
                s.total_nodes, "relations", s.total_edges);
  out += buf;
  return out;
}

bool KnowledgeGraph::upsert_node(const Node& node) {
  if (node.key.id.empty()) throw Error("node id must be non-empty");
  auto [it, inserted] = nodes_.try_emplace(node.key, node);
  if (inserted) return true;
  bool changed = false;
  for (const auto& [k, v] : node.properties) {
    auto [pit, added] = it->second.properties.try_emplace(k, v);
    if (!added && pit->second != v) {
      pit->second = v;
      changed = true;
    }
    changed = changed || added;
  }
  return changed;
}

bool KnowledgeGraph::upsert_edge(const Edge& edge) {
  const auto& k = edge.key;
  schema_->check(k.source.kind, k.kind, k.target.kind);
  if (!nodes_.count(k.source)) throw MissingNodeError("edge source missing: " + to_string(k.source));
  if (!nodes_.count(k.target)) throw MissingNodeError("edge target missing: " + to_string(k.target));
  if (!edges_.try_emplace(k, edge.provenance).second) return false;
  insert_sorted(out_[{k.source, k.kind}], k.target);
  insert_sorted(in_[{k.target, k.kind}], k.source);
  return true;
}

const Node* KnowledgeGraph::find_node(const NodeKey& key) const {
  const auto it = nodes_.find(key);
  return it == nodes_.end() ? nullptr : &it->second;
}

const std::vector<NodeKey>& KnowledgeGraph::out_neighbors(const NodeKey& n, RelationKind kind) const {
  return lookup(out_, n, kind);
}

const std::vector<NodeKey>& KnowledgeGraph::in_neighbors(const NodeKey& n, RelationKind kind) const {
  return lookup(in_, n, kind);
}

GraphStats KnowledgeGraph::stats() const {
  GraphStats s;
  for (const auto c : all_concepts()) s.nodes[c] = 0;
  for (const auto r : all_relations()) s.edges[r] = 0;
  for (const auto& [key, node] : nodes_) ++s.nodes[key.kind];
  for (const auto& [key, prov] : edges_) ++s.edges[key.kind];
  s.total_nodes = nodes_.size();
  s.total_edges = edges_.size();
  return s;
}

std::vector<std::string> KnowledgeGraph::check_integrity() const {
  std::vector<std::string> problems;
  for (const auto& [k, prov] : edges_) {
    if (!nodes_.count(k.source)) problems.push_back("dangling source " + to_string(k.source));
    if (!nodes_.count(k.target)) problems.push_back("dangling target " + to_string(k.target));
    if (!schema_->allows(k.source.kind, k.kind, k.target.kind)) {
      problems.push_back("signature violation on " + std::string(to_string(k.kind)));
    }
  }
  return problems;
}

}  // namespace skg::kg
