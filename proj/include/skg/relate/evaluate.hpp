#pragma once

#include <string>
#include <vector>

#include "skg/relate/relation_model.hpp"
#include "skg/relate/triples.hpp"

namespace skg::relate {

struct RelationMetrics {
  double precision = 0.0;
  double recall = 0.0;
};

/// Macro precision and recall over is_A, impact and related_to. A class
/// enters each average only when that average's denominator (predicted or
/// gold count) is non-zero; no such class gives 0. unknown is the abstain
/// class and is not averaged.
RelationMetrics evaluate_relations(const std::vector<RelationLabel>& predictions,
                                   const std::vector<RelationLabel>& gold);

/// A classified aligned triple ready for the graph.
struct RelationEdge {
  std::string head;  // entity_id
  RelationLabel label = RelationLabel::unknown;
  std::string tail;  // entity_id
  std::string paper_id;
};

/// Classifies every aligned triple.
std::vector<RelationEdge> classify_triples(const std::vector<AlignedTriple>& triples,
                                           const RelationModel& model);

/// entity_id <TAB> label <TAB> entity_id <TAB> paper_id
std::string format_edge_lines(const std::vector<RelationEdge>& edges);
std::vector<RelationEdge> parse_edge_lines(const std::vector<std::string>& lines);

}  // namespace skg::relate
