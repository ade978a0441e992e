#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "skg/common/error.hpp"

namespace skg::extract {

enum class EntitySource { glossary, discipline_kg, wiki };

std::string_view to_string(EntitySource s);
std::optional<EntitySource> parse_entity_source(std::string_view s);

struct GlossaryEntry {
  std::string entity_id;
  std::string name;
  std::string description;  // the retrieval document for this entity
  std::size_t discipline = 0;
  EntitySource source = EntitySource::glossary;
};

struct GlossaryFile {
  std::vector<GlossaryEntry> entries;
  Diagnostics warnings;
};

/// entity_id <TAB> name <TAB> discipline <TAB> source <TAB> description
GlossaryFile parse_glossary_lines(const std::vector<std::string>& lines);
GlossaryFile read_glossary(const std::filesystem::path& path);
std::string format_glossary_line(const GlossaryEntry& e);

struct RankAnnotation {
  std::string paper_id;
  std::string entity_id;
  int label = 0;  // 0 or 1
};

struct AnnotationFile {
  std::vector<RankAnnotation> annotations;
  Diagnostics warnings;
};

/// paper_id <TAB> entity_id <TAB> 0|1
AnnotationFile parse_annotation_lines(const std::vector<std::string>& lines);
AnnotationFile read_annotations(const std::filesystem::path& path);

}  // namespace skg::extract
