#pragma once

#include <array>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

#include "skg/common/error.hpp"

namespace skg::kg {

enum class ConceptKind {
  paper,
  author,
  organization,
  journal,
  conference,
  preprint,
  venue,
  topic,
  discipline,
  papertable,
  illustration,
  knowledge,
  location,
};
inline constexpr std::size_t kConceptCount = 13;

enum class RelationKind {
  is_cited_by,
  is_written_by,
  is_published_in,
  in_the_topic_of,
  belongs_to,
  mention_knowledge,
  mention_location,
  work_in,
  is_located_in,
  has_papertable,
  has_illustration,
  is_A,
  impact,
  related_to,
  subClassOf,
  sameAs,
};
inline constexpr std::size_t kRelationCount = 16;

std::string_view to_string(ConceptKind k);
std::string_view to_string(RelationKind k);
std::optional<ConceptKind> parse_concept(std::string_view s);
std::optional<RelationKind> parse_relation(std::string_view s);

const std::array<ConceptKind, kConceptCount>& all_concepts();
const std::array<RelationKind, kRelationCount>& all_relations();

/// Raised for an edge whose (source kind, relation, target kind) is not
/// declared.
class SchemaError : public Error {
 public:
  using Error::Error;
};

inline constexpr std::string_view kNamespace = "http://scholarkg.example.org/";

/// Declarative signature table.
class Schema {
 public:
  /// Parses the schema file format (see data/schema.tsv). Every concept and
  /// relation must be declared and no unknown name may appear.
  static Schema parse(std::string_view text);

  bool allows(ConceptKind source, RelationKind relation, ConceptKind target) const;
  /// Throws SchemaError naming the offending signature.
  void check(ConceptKind source, RelationKind relation, ConceptKind target) const;

  const std::set<std::tuple<ConceptKind, RelationKind, ConceptKind>>& signatures() const {
    return signatures_;
  }
  const std::map<ConceptKind, std::vector<std::string>>& properties() const { return properties_; }

  std::string predicate_iri(RelationKind r) const;
  std::optional<RelationKind> relation_for_iri(std::string_view iri) const;

 private:
  std::set<std::tuple<ConceptKind, RelationKind, ConceptKind>> signatures_;
  std::map<RelationKind, std::string> iris_;
  std::map<ConceptKind, std::vector<std::string>> properties_;
};

/// The schema compiled in from data/schema.tsv.
const Schema& default_schema();

}  // namespace skg::kg
