#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "skg/kgstore/graph.hpp"

namespace skg::netsci {

enum class NetworkKind { coauthor, citation, author_writes_paper, paper_inspires_author };

std::string_view to_string(NetworkKind k);
std::optional<NetworkKind> parse_network_kind(std::string_view s);
const std::vector<NetworkKind>& all_network_kinds();

/// Node ids are KG ids. Unipartite kinds use `left` only. Edges index into
/// `left` (source) and, for bipartite kinds, `right` (target); undirected
/// edges are stored once with first < second. Edge lists are sorted and
/// distinct.
struct NetworkGraph {
  NetworkKind kind = NetworkKind::coauthor;
  bool directed = false;
  bool bipartite = false;
  std::vector<std::string> left;
  std::vector<std::string> right;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;
  std::vector<std::string> log;  // e.g. citation cycles found while building
};

/// coauthor: authors of at least one paper, linked when they share one.
/// citation: papers touching an is_cited_by edge; edge citing -> cited.
/// author_writes_paper: authors x papers over is_written_by.
/// paper_inspires_author: author -> every paper cited by a paper they wrote.
NetworkGraph build_network(const kg::KnowledgeGraph& g, NetworkKind kind);

/// One "id<TAB>id" line per edge.
std::string format_edge_list(const NetworkGraph& g);

}  // namespace skg::netsci
