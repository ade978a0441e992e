#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "skg/kgstore/graph.hpp"

namespace skg::kg {

enum class Direction { forward, backward };

std::string_view to_string(Direction d);
std::optional<Direction> parse_direction(std::string_view s);

struct Step {
  RelationKind relation = RelationKind::is_cited_by;
  Direction direction = Direction::forward;
};

/// Matches a node when every given constraint holds; properties compare by
/// exact value.
struct NodeSelector {
  std::optional<ConceptKind> kind;
  std::optional<std::string> id;
  Properties properties;

  bool matches(const Node& n) const;
};

struct PathQuery {
  NodeSelector start;
  std::vector<Step> steps;  // 1 to 3
  NodeSelector end;
};

inline constexpr std::size_t kMaxHops = 3;

/// One node per position: start, then the node reached after each step.
using BindingRow = std::vector<NodeKey>;

/// All distinct bindings of the path, sorted. Throws on a path with no step
/// or more than kMaxHops steps.
std::vector<BindingRow> traverse(const KnowledgeGraph& g, const PathQuery& q);

}  // namespace skg::kg
