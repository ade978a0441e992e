#include "skg/extract/tagging.hpp"

#include <algorithm>
#include <map>

#include "skg/common/error.hpp"
#include "skg/common/io.hpp"
#include "skg/common/text.hpp"

namespace skg::extract {

std::vector<ScoredCandidate> score_candidates(std::string_view text, const EsaIndex& index,
                                              const RankerModel& model, std::size_t top_n) {
  std::vector<ScoredCandidate> out;
  for (auto& c : index.candidates(text, top_n)) {
    const GlossaryEntry* entry = index.find(c.entity_id);
    const RankFeatures f = features(c, *entry, index);
    const double s = model.score(f);
    out.push_back({std::move(c), f, s});
  }
  return out;
}

std::vector<Tag> tag(std::string_view paper_id, std::string_view text, const EsaIndex& index,
                     const RankerModel& model, double threshold, std::size_t top_n) {
  std::vector<Tag> out;
  for (const auto& sc : score_candidates(text, index, model, top_n)) {
    if (sc.score >= threshold) out.push_back({std::string(paper_id), sc.candidate.entity_id, sc.score});
  }
  std::sort(out.begin(), out.end(), [](const Tag& a, const Tag& b) {
    if (a.score != b.score) return a.score > b.score;
    return a.entity_id < b.entity_id;
  });
  return out;
}

TaggingMetrics evaluate_tagging(const std::vector<Tag>& tags, const GoldSet& gold) {
  if (gold.empty()) throw Error("evaluate_tagging: empty gold set");
  GoldSet emitted;
  for (const auto& t : tags) emitted.emplace(t.paper_id, t.entity_id);
  std::size_t hits = 0;
  for (const auto& e : emitted) hits += gold.count(e);
  TaggingMetrics m;
  if (!emitted.empty()) m.precision = static_cast<double>(hits) / static_cast<double>(emitted.size());
  m.recall = static_cast<double>(hits) / static_cast<double>(gold.size());
  return m;
}

ThresholdChoice sweep_threshold(const std::vector<Tag>& scored, const GoldSet& gold,
                                double min_recall) {
  if (gold.empty()) throw Error("sweep_threshold: empty gold set");
  if (scored.empty()) throw Error("sweep_threshold: nothing to sweep");
  // Best score per distinct pair, visited from the highest score down.
  std::map<std::pair<std::string, std::string>, double> best;
  for (const auto& t : scored) {
    auto [it, inserted] = best.try_emplace({t.paper_id, t.entity_id}, t.score);
    if (!inserted) it->second = std::max(it->second, t.score);
  }
  std::vector<std::pair<double, bool>> items;
  for (const auto& [key, s] : best) items.emplace_back(s, gold.count(key) > 0);
  std::sort(items.begin(), items.end(),
            [](const auto& a, const auto& b) { return a.first > b.first; });

  std::optional<ThresholdChoice> chosen;
  ThresholdChoice lowest;
  std::size_t emitted = 0;
  std::size_t hits = 0;
  for (std::size_t i = 0; i < items.size(); ++i) {
    ++emitted;
    hits += items[i].second ? 1 : 0;
    if (i + 1 < items.size() && items[i + 1].first == items[i].first) continue;
    const ThresholdChoice c{items[i].first,
                            static_cast<double>(hits) / static_cast<double>(emitted),
                            static_cast<double>(hits) / static_cast<double>(gold.size())};
    lowest = c;
    if (c.recall < min_recall) continue;
    // Thresholds arrive in decreasing order, so ">=" on recall ties prefers
    // the lower threshold.
    if (!chosen || c.precision > chosen->precision ||
        (c.precision == chosen->precision && c.recall >= chosen->recall)) {
      chosen = c;
    }
  }
  return chosen ? *chosen : lowest;
}

GoldSet positive_annotations(const std::vector<RankAnnotation>& annotations) {
  std::map<std::pair<std::string, std::string>, int> last;
  for (const auto& a : annotations) last[{a.paper_id, a.entity_id}] = a.label;
  GoldSet gold;
  for (const auto& [key, label] : last) {
    if (label == 1) gold.insert(key);
  }
  return gold;
}

std::vector<RankGroup> build_groups(
    const std::vector<RankAnnotation>& annotations,
    const std::function<std::optional<std::string>(const std::string&)>& paper_text,
    const EsaIndex& index, std::size_t top_n, std::vector<std::string>* warnings) {
  std::map<std::string, std::map<std::string, int>> by_paper;
  for (const auto& a : annotations) by_paper[a.paper_id][a.entity_id] = a.label;
  std::vector<RankGroup> groups;
  for (const auto& [paper_id, labels] : by_paper) {
    const auto text = paper_text(paper_id);
    if (!text) {
      if (warnings) warnings->push_back("annotated paper " + paper_id + " not in corpus");
      continue;
    }
    RankGroup g;
    g.paper_id = paper_id;
    for (const auto& c : index.candidates(*text, top_n)) {
      const auto it = labels.find(c.entity_id);
      if (it == labels.end()) continue;
      g.features.push_back(features(c, *index.find(c.entity_id), index));
      g.labels.push_back(it->second);
    }
    if (!g.features.empty()) groups.push_back(std::move(g));
  }
  return groups;
}

std::string format_tag_lines(const std::vector<Tag>& tags) {
  std::string out;
  for (const auto& t : tags) out += t.paper_id + "\tmention_knowledge\t" + t.entity_id + "\n";
  return out;
}

std::vector<Tag> read_tag_lines(const std::filesystem::path& path) {
  std::vector<Tag> out;
  std::size_t n = 0;
  for (const auto& line : io::read_lines(path)) {
    ++n;
    const auto f = text::split(line, '\t');
    if (f.size() != 3 || f[1] != "mention_knowledge") {
      throw Error(path.string() + ":" + std::to_string(n) + ": malformed tag line");
    }
    out.push_back({f[0], f[2], 0.0});
  }
  return out;
}

}  // namespace skg::extract
