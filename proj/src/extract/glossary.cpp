#include "skg/extract/glossary.hpp"

#include <array>

#include "skg/classify/disciplines.hpp"
#include "skg/common/io.hpp"
#include "skg/common/text.hpp"

namespace skg::extract {
namespace {

constexpr std::array<std::string_view, 3> kSourceNames{"glossary", "discipline_kg", "wiki"};

template <typename Result, typename Parse>
Result parse_lines(const std::vector<std::string>& lines, Parse&& parse) {
  Result out;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    if (text::trim(lines[i]).empty() || lines[i].starts_with('#')) continue;
    try {
      parse(text::split(lines[i], '\t'), out);
    } catch (const Error& e) {
      out.warnings.push_back({i + 1, e.what()});
    }
  }
  return out;
}

}  // namespace

std::string_view to_string(EntitySource s) { return kSourceNames[static_cast<std::size_t>(s)]; }

std::optional<EntitySource> parse_entity_source(std::string_view s) {
  for (std::size_t i = 0; i < kSourceNames.size(); ++i) {
    if (kSourceNames[i] == s) return static_cast<EntitySource>(i);
  }
  return std::nullopt;
}

GlossaryFile parse_glossary_lines(const std::vector<std::string>& lines) {
  return parse_lines<GlossaryFile>(lines, [](const std::vector<std::string>& f, GlossaryFile& out) {
    if (f.size() != 5) throw Error("expected 5 tab-separated fields");
    GlossaryEntry e;
    e.entity_id = std::string(text::trim(f[0]));
    e.name = std::string(text::trim(text::unescape_field(f[1])));
    const auto discipline = classify::parse_discipline(f[2]);
    if (!discipline) throw Error("unknown discipline '" + f[2] + "'");
    e.discipline = *discipline;
    const auto source = parse_entity_source(text::trim(f[3]));
    if (!source) throw Error("unknown entity source '" + f[3] + "'");
    e.source = *source;
    e.description = text::unescape_field(f[4]);
    if (e.entity_id.empty()) throw Error("empty entity_id");
    if (e.name.empty()) throw Error("empty entity name");
    if (text::trim(e.description).empty()) throw Error("empty description for " + e.entity_id);
    out.entries.push_back(std::move(e));
  });
}

GlossaryFile read_glossary(const std::filesystem::path& path) {
  return parse_glossary_lines(io::read_lines(path));
}

std::string format_glossary_line(const GlossaryEntry& e) {
  return e.entity_id + "\t" + text::escape_field(e.name) + "\t" + std::to_string(e.discipline) +
         "\t" + std::string(to_string(e.source)) + "\t" + text::escape_field(e.description);
}

AnnotationFile parse_annotation_lines(const std::vector<std::string>& lines) {
  return parse_lines<AnnotationFile>(
      lines, [](const std::vector<std::string>& f, AnnotationFile& out) {
        if (f.size() != 3) throw Error("expected 3 tab-separated fields");
        RankAnnotation a{std::string(text::trim(f[0])), std::string(text::trim(f[1])),
                         static_cast<int>(text::parse_int(f[2]))};
        if (a.paper_id.empty() || a.entity_id.empty()) throw Error("empty id");
        if (a.label != 0 && a.label != 1) throw Error("label must be 0 or 1");
        out.annotations.push_back(std::move(a));
      });
}

AnnotationFile read_annotations(const std::filesystem::path& path) {
  return parse_annotation_lines(io::read_lines(path));
}

}  // namespace skg::extract
