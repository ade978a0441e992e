#include "skg/relate/triples.hpp"

#include "skg/common/io.hpp"
#include "skg/common/text.hpp"

namespace skg::relate {
namespace {

constexpr std::array<std::string_view, kLabelCount> kLabelNames{"is_A", "impact", "related_to",
                                                                "unknown"};

std::string required(const std::string& raw, const char* what) {
  std::string v = text::unescape_field(raw);
  if (text::trim(v).empty()) throw Error(std::string("empty ") + what);
  return v;
}

}  // namespace

std::string_view to_string(RelationLabel l) { return kLabelNames[static_cast<std::size_t>(l)]; }

std::optional<RelationLabel> parse_relation_label(std::string_view s) {
  s = text::trim(s);
  for (std::size_t i = 0; i < kLabelNames.size(); ++i) {
    if (kLabelNames[i] == s) return static_cast<RelationLabel>(i);
  }
  return std::nullopt;
}

TripleFile parse_triple_lines(const std::vector<std::string>& lines) {
  TripleFile out;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    if (text::trim(lines[i]).empty()) continue;
    try {
      const auto f = text::split(lines[i], '\t');
      if (f.size() != 5) throw Error("expected 5 tab-separated fields");
      RawTriple t{std::string(text::trim(f[0])), required(f[1], "head"),
                  required(f[2], "relation"), required(f[3], "tail"),
                  required(f[4], "sentence")};
      if (t.paper_id.empty()) throw Error("empty paper_id");
      const std::string folded = text::fold(t.sentence);
      if (folded.find(text::fold(t.head)) == std::string::npos) {
        throw Error("sentence does not contain head '" + t.head + "'");
      }
      if (folded.find(text::fold(t.tail)) == std::string::npos) {
        throw Error("sentence does not contain tail '" + t.tail + "'");
      }
      out.triples.push_back(std::move(t));
    } catch (const Error& e) {
      out.warnings.push_back({i + 1, e.what()});
    }
  }
  return out;
}

TripleFile read_triples(const std::filesystem::path& path) {
  return parse_triple_lines(io::read_lines(path));
}

std::string format_triple_line(const RawTriple& t) {
  return t.paper_id + "\t" + text::escape_field(t.head) + "\t" + text::escape_field(t.relation) +
         "\t" + text::escape_field(t.tail) + "\t" + text::escape_field(t.sentence);
}

NameMap::NameMap(const std::vector<extract::GlossaryEntry>& entries) {
  for (const auto& e : entries) {
    const std::string key = text::fold_collapse(e.name);
    auto [it, inserted] = by_name_.try_emplace(key, e.entity_id);
    if (!inserted) {
      ++ambiguous_;
      if (e.entity_id < it->second) it->second = e.entity_id;
    }
  }
}

std::optional<std::string> NameMap::find(std::string_view surface) const {
  const auto it = by_name_.find(text::fold_collapse(surface));
  if (it == by_name_.end()) return std::nullopt;
  return it->second;
}

std::optional<AlignedTriple> align(const RawTriple& triple, const NameMap& names) {
  const auto h = names.find(triple.head);
  if (!h) return std::nullopt;
  const auto t = names.find(triple.tail);
  if (!t || *t == *h) return std::nullopt;
  return AlignedTriple{triple.paper_id, *h,           *t,         triple.relation,
                       triple.sentence, triple.head, triple.tail};
}

AnnotationFile parse_relation_annotation_lines(const std::vector<std::string>& lines) {
  AnnotationFile out;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    if (text::trim(lines[i]).empty()) continue;
    try {
      const auto f = text::split(lines[i], '\t');
      if (f.size() != 5) throw Error("expected 5 tab-separated fields");
      const auto label = parse_relation_label(f[3]);
      if (!label) throw Error("unknown relation label '" + f[3] + "'");
      out.annotations.push_back({required(f[4], "sentence"), required(f[0], "head"),
                                 required(f[1], "relation"), required(f[2], "tail"), *label});
    } catch (const Error& e) {
      out.warnings.push_back({i + 1, e.what()});
    }
  }
  return out;
}

AnnotationFile read_relation_annotations(const std::filesystem::path& path) {
  return parse_relation_annotation_lines(io::read_lines(path));
}

std::string format_relation_annotation_line(const RelationAnnotation& a) {
  return text::escape_field(a.head) + "\t" + text::escape_field(a.relation) + "\t" +
         text::escape_field(a.tail) + "\t" + std::string(to_string(a.label)) + "\t" +
         text::escape_field(a.sentence);
}

}  // namespace skg::relate
