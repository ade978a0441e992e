#pragma once

#include <filesystem>
#include <functional>
#include <limits>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "skg/extract/esa_index.hpp"
#include "skg/extract/features.hpp"
#include "skg/extract/glossary.hpp"
#include "skg/extract/ranker.hpp"

namespace skg::extract {

struct ScoredCandidate {
  Candidate candidate;
  RankFeatures features;
  double score = 0.0;
};

/// ESA candidates for `text` with their features and ranker scores, in
/// candidate order.
std::vector<ScoredCandidate> score_candidates(std::string_view text, const EsaIndex& index,
                                              const RankerModel& model, std::size_t top_n = 50);

/// A mention_knowledge assertion.
struct Tag {
  std::string paper_id;
  std::string entity_id;
  double score = 0.0;
};

/// Candidates scoring >= threshold, ordered by score descending then
/// entity_id.
std::vector<Tag> tag(std::string_view paper_id, std::string_view text, const EsaIndex& index,
                     const RankerModel& model, double threshold, std::size_t top_n = 50);

using GoldSet = std::set<std::pair<std::string, std::string>>;  // (paper_id, entity_id)

struct TaggingMetrics {
  double precision = 0.0;  // 0 when no tags are emitted
  double recall = 0.0;
};

/// Set precision/recall over distinct (paper_id, entity_id) pairs. Throws on
/// empty gold.
TaggingMetrics evaluate_tagging(const std::vector<Tag>& tags, const GoldSet& gold);

struct ThresholdChoice {
  double threshold = 0.0;
  double precision = 0.0;
  double recall = 0.0;
};

/// Sweeps every distinct score of `scored` (tags emitted at threshold -inf)
/// as a threshold and keeps the one with the best precision among those
/// reaching `min_recall`; ties go to higher recall, then lower threshold.
/// If none reaches `min_recall` the lowest threshold is returned.
ThresholdChoice sweep_threshold(const std::vector<Tag>& scored, const GoldSet& gold,
                                double min_recall = 0.2);

GoldSet positive_annotations(const std::vector<RankAnnotation>& annotations);

/// Builds ranking groups from annotations: for each annotated paper, the
/// ESA candidates of its text that carry an annotation. When an entity is
/// annotated more than once for a paper the later line wins. Papers whose
/// text is unknown are reported in `warnings`.
std::vector<RankGroup> build_groups(
    const std::vector<RankAnnotation>& annotations,
    const std::function<std::optional<std::string>(const std::string&)>& paper_text,
    const EsaIndex& index, std::size_t top_n, std::vector<std::string>* warnings);

/// paper_id <TAB> mention_knowledge <TAB> entity_id
std::string format_tag_lines(const std::vector<Tag>& tags);
std::vector<Tag> read_tag_lines(const std::filesystem::path& path);

}  // namespace skg::extract
