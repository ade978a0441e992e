#include "skg/relate/evaluate.hpp"

#include <array>

#include "skg/common/error.hpp"
#include "skg/common/text.hpp"

namespace skg::relate {

RelationMetrics evaluate_relations(const std::vector<RelationLabel>& predictions,
                                   const std::vector<RelationLabel>& gold) {
  if (gold.empty()) throw Error("evaluate_relations: empty gold");
  if (predictions.size() != gold.size()) throw Error("evaluate_relations: size mismatch");
  std::array<double, kLabelCount> tp{};
  std::array<double, kLabelCount> predicted{};
  std::array<double, kLabelCount> actual{};
  for (std::size_t i = 0; i < gold.size(); ++i) {
    const auto p = static_cast<std::size_t>(predictions[i]);
    const auto g = static_cast<std::size_t>(gold[i]);
    predicted[p] += 1;
    actual[g] += 1;
    if (p == g) tp[p] += 1;
  }
  RelationMetrics m;
  int p_classes = 0;
  int r_classes = 0;
  for (std::size_t c = 0; c < static_cast<std::size_t>(RelationLabel::unknown); ++c) {
    if (predicted[c] > 0) {
      m.precision += tp[c] / predicted[c];
      ++p_classes;
    }
    if (actual[c] > 0) {
      m.recall += tp[c] / actual[c];
      ++r_classes;
    }
  }
  if (p_classes) m.precision /= p_classes;
  if (r_classes) m.recall /= r_classes;
  return m;
}

std::vector<RelationEdge> classify_triples(const std::vector<AlignedTriple>& triples,
                                           const RelationModel& model) {
  std::vector<RelationEdge> out;
  out.reserve(triples.size());
  for (const auto& t : triples) {
    const auto p = predict_relation(t.sentence, t.head_surface, t.tail_surface, model);
    out.push_back({t.h, p.label, t.t, t.paper_id});
  }
  return out;
}

std::string format_edge_lines(const std::vector<RelationEdge>& edges) {
  std::string out;
  for (const auto& e : edges) {
    out += e.head + "\t" + std::string(to_string(e.label)) + "\t" + e.tail + "\t" + e.paper_id + "\n";
  }
  return out;
}

std::vector<RelationEdge> parse_edge_lines(const std::vector<std::string>& lines) {
  std::vector<RelationEdge> out;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    if (text::trim(lines[i]).empty()) continue;
    const auto f = text::split(lines[i], '\t');
    const auto label = f.size() == 4 ? parse_relation_label(f[1]) : std::nullopt;
    if (!label) throw Error("relation edges line " + std::to_string(i + 1) + ": malformed");
    out.push_back({f[0], *label, f[2], f[3]});
  }
  return out;
}

}  // namespace skg::relate
