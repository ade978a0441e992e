#include "skg/kgstore/schema.hpp"

#include "schema_text.hpp"
#include "skg/common/text.hpp"

namespace skg::kg {
namespace {

constexpr std::array<std::string_view, kConceptCount> kConceptNames{
    "paper",      "author",       "organization", "journal",   "conference",
    "preprint",   "venue",        "topic",        "discipline", "papertable",
    "illustration", "knowledge",  "location"};

constexpr std::array<std::string_view, kRelationCount> kRelationNames{
    "is_cited_by",     "is_written_by",  "is_published_in",  "in_the_topic_of",
    "belongs_to",      "mention_knowledge", "mention_location", "work_in",
    "is_located_in",   "has_papertable", "has_illustration", "is_A",
    "impact",          "related_to",     "subClassOf",       "sameAs"};

template <typename E, std::size_t N>
std::optional<E> lookup(const std::array<std::string_view, N>& names, std::string_view s) {
  for (std::size_t i = 0; i < N; ++i) {
    if (names[i] == s) return static_cast<E>(i);
  }
  return std::nullopt;
}

template <typename E, std::size_t N>
std::array<E, N> enumerate() {
  std::array<E, N> out{};
  for (std::size_t i = 0; i < N; ++i) out[i] = static_cast<E>(i);
  return out;
}

}  // namespace

std::string_view to_string(ConceptKind k) { return kConceptNames[static_cast<std::size_t>(k)]; }
std::string_view to_string(RelationKind k) { return kRelationNames[static_cast<std::size_t>(k)]; }
std::optional<ConceptKind> parse_concept(std::string_view s) {
  return lookup<ConceptKind>(kConceptNames, s);
}
std::optional<RelationKind> parse_relation(std::string_view s) {
  return lookup<RelationKind>(kRelationNames, s);
}

const std::array<ConceptKind, kConceptCount>& all_concepts() {
  static const auto all = enumerate<ConceptKind, kConceptCount>();
  return all;
}

const std::array<RelationKind, kRelationCount>& all_relations() {
  static const auto all = enumerate<RelationKind, kRelationCount>();
  return all;
}

Schema Schema::parse(std::string_view text_in) {
  Schema s;
  std::set<ConceptKind> concepts;
  std::set<RelationKind> relations;
  std::size_t line_no = 0;
  for (const auto& raw : text::split(text_in, '\n')) {
    ++line_no;
    const std::string_view line = text::trim(raw);
    if (line.empty() || line.starts_with('#')) continue;
    const auto f = text::split(line, '\t');
    const auto fail = [&](const std::string& msg) {
      return Error("schema line " + std::to_string(line_no) + ": " + msg);
    };
    const auto concept_at = [&](std::size_t i) {
      const auto c = parse_concept(f.at(i));
      if (!c) throw fail("unknown concept '" + f[i] + "'");
      return *c;
    };
    if (f[0] == "concept" && f.size() == 2) {
      concepts.insert(concept_at(1));
    } else if (f[0] == "relation" && (f.size() == 4 || f.size() == 5)) {
      const auto r = parse_relation(f[1]);
      if (!r) throw fail("unknown relation '" + f[1] + "'");
      relations.insert(*r);
      s.signatures_.emplace(concept_at(2), *r, concept_at(3));
      if (f.size() == 5) s.iris_[*r] = f[4];
    } else if (f[0] == "property" && f.size() == 3) {
      s.properties_[concept_at(1)].push_back(f[2]);
    } else {
      throw fail("unrecognised row");
    }
  }
  if (concepts.size() != kConceptCount) throw Error("schema: not every concept is declared");
  if (relations.size() != kRelationCount) throw Error("schema: not every relation has a signature");
  return s;
}

bool Schema::allows(ConceptKind source, RelationKind relation, ConceptKind target) const {
  return signatures_.count({source, relation, target}) > 0;
}

void Schema::check(ConceptKind source, RelationKind relation, ConceptKind target) const {
  if (!allows(source, relation, target)) {
    throw SchemaError("schema violation: " + std::string(to_string(relation)) + " from " +
                      std::string(to_string(source)) + " to " + std::string(to_string(target)));
  }
}

std::string Schema::predicate_iri(RelationKind r) const {
  const auto it = iris_.find(r);
  if (it != iris_.end()) return it->second;
  return std::string(kNamespace) + "schema/" + std::string(to_string(r));
}

std::optional<RelationKind> Schema::relation_for_iri(std::string_view iri) const {
  for (const auto r : all_relations()) {
    if (predicate_iri(r) == iri) return r;
  }
  return std::nullopt;
}

const Schema& default_schema() {
  static const Schema schema = Schema::parse(detail::kSchemaText);
  return schema;
}

}  // namespace skg::kg
