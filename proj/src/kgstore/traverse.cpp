#include "skg/kgstore/traverse.hpp"

#include <algorithm>

namespace skg::kg {
namespace {

void extend(const KnowledgeGraph& g, const PathQuery& q, BindingRow& row,
            std::vector<BindingRow>& out) {
  const std::size_t depth = row.size() - 1;
  if (depth == q.steps.size()) {
    if (q.end.matches(*g.find_node(row.back()))) out.push_back(row);
    return;
  }
  const Step& step = q.steps[depth];
  const auto& next = step.direction == Direction::forward
                         ? g.out_neighbors(row.back(), step.relation)
                         : g.in_neighbors(row.back(), step.relation);
  for (const auto& n : next) {
    row.push_back(n);
    extend(g, q, row, out);
    row.pop_back();
  }
}

}  // namespace

std::string_view to_string(Direction d) { return d == Direction::forward ? "out" : "in"; }

std::optional<Direction> parse_direction(std::string_view s) {
  if (s == "out" || s == "forward") return Direction::forward;
  if (s == "in" || s == "backward") return Direction::backward;
  return std::nullopt;
}

bool NodeSelector::matches(const Node& n) const {
  if (kind && n.key.kind != *kind) return false;
  if (id && n.key.id != *id) return false;
  for (const auto& [k, v] : properties) {
    const auto it = n.properties.find(k);
    if (it == n.properties.end() || it->second != v) return false;
  }
  return true;
}

std::vector<BindingRow> traverse(const KnowledgeGraph& g, const PathQuery& q) {
  if (q.steps.empty() || q.steps.size() > kMaxHops) {
    throw Error("path query must have 1 to " + std::to_string(kMaxHops) + " steps");
  }
  std::vector<BindingRow> out;
  const auto visit = [&](const Node& n) {
    if (!q.start.matches(n)) return;
    BindingRow row{n.key};
    extend(g, q, row, out);
  };
  if (q.start.kind && q.start.id) {
    if (const Node* n = g.find_node({*q.start.kind, *q.start.id})) visit(*n);
  } else {
    for (const auto& [key, node] : g.nodes()) visit(node);
  }
  // Rows are generated in sorted order already (sorted starts, sorted
  // adjacency); sorting again keeps the contract independent of that.
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace skg::kg
