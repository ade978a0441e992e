#pragma once

#include <array>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "skg/common/error.hpp"
#include "skg/extract/glossary.hpp"

namespace skg::relate {

enum class RelationLabel { is_A, impact, related_to, unknown };
inline constexpr std::size_t kLabelCount = 4;

std::string_view to_string(RelationLabel l);
std::optional<RelationLabel> parse_relation_label(std::string_view s);

struct RawTriple {
  std::string paper_id;
  std::string head;
  std::string relation;
  std::string tail;
  std::string sentence;
};

struct TripleFile {
  std::vector<RawTriple> triples;
  Diagnostics warnings;
};

/// paper_id <TAB> head <TAB> relation <TAB> tail <TAB> sentence; fields use
/// backslash escapes. The sentence must contain head and tail
/// (case-insensitively).
TripleFile parse_triple_lines(const std::vector<std::string>& lines);
TripleFile read_triples(const std::filesystem::path& path);
std::string format_triple_line(const RawTriple& t);

struct AlignedTriple {
  std::string paper_id;
  std::string h;  // entity_id
  std::string t;  // entity_id
  std::string r_surface;
  std::string sentence;
  std::string head_surface;
  std::string tail_surface;
};

/// Case-folded, whitespace-collapsed glossary name -> entity_id. When two
/// entries share a name the smaller entity_id is kept.
class NameMap {
 public:
  explicit NameMap(const std::vector<extract::GlossaryEntry>& entries);
  std::optional<std::string> find(std::string_view surface) const;
  std::size_t size() const { return by_name_.size(); }
  std::size_t ambiguous() const { return ambiguous_; }

 private:
  std::map<std::string, std::string> by_name_;
  std::size_t ambiguous_ = 0;
};

/// Exact-match alignment of both ends; none when either end is missing from
/// the glossary or both resolve to the same entity.
std::optional<AlignedTriple> align(const RawTriple& triple, const NameMap& names);

struct RelationAnnotation {
  std::string sentence;
  std::string head;
  std::string relation;
  std::string tail;
  RelationLabel label = RelationLabel::unknown;
};

struct AnnotationFile {
  std::vector<RelationAnnotation> annotations;
  Diagnostics warnings;
};

/// head <TAB> relation <TAB> tail <TAB> label <TAB> sentence
AnnotationFile parse_relation_annotation_lines(const std::vector<std::string>& lines);
AnnotationFile read_relation_annotations(const std::filesystem::path& path);
std::string format_relation_annotation_line(const RelationAnnotation& a);

}  // namespace skg::relate
