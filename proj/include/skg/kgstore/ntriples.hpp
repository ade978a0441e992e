#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "skg/kgstore/graph.hpp"

namespace skg::kg {

/// <http://scholarkg.example.org/{kind}/{percent-encoded id}>
std::string node_iri(const NodeKey& k);
std::string class_iri(ConceptKind k);
inline constexpr std::string_view kRdfType = "http://www.w3.org/1999/02/22-rdf-syntax-ns#type";

std::string percent_encode(std::string_view s);
std::string percent_decode(std::string_view s);

/// One rdf:type line per node, then one line per edge, each sorted, so the
/// output is byte-stable for a given graph. Properties are not exported.
std::string export_ntriples(const KnowledgeGraph& g);
void write_ntriples(const KnowledgeGraph& g, const std::filesystem::path& path);

/// Reads what export_ntriples writes. Throws on lines it cannot interpret.
KnowledgeGraph import_ntriples(std::string_view data, const Schema& schema = default_schema());

}  // namespace skg::kg
