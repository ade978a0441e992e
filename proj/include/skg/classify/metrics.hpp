#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace skg::classify {

struct PredictionRecord {
  std::string paper_id;
  std::vector<double> x;  // per-label probability
  std::vector<int> y;     // per-label 0/1 truth
};

/// All values are fractions in [0, 1]; reports multiply by 100.
struct ClassificationMetrics {
  std::size_t k = 0;
  double precision_at_k = 0.0;
  double ndcg_at_k = 0.0;
  double auc = 0.0;
};

/// Precision@k and NDCG@k averaged over records (labels ranked by x, ties
/// by label index); AUC is the rank statistic per label, averaged over the
/// labels that have both a positive and a negative record.
ClassificationMetrics evaluate(const std::vector<PredictionRecord>& records, std::size_t k);

/// Mann-Whitney AUC with average ranks for tied scores. Throws unless both
/// classes are present.
double auc_rank_statistic(std::span<const double> scores, std::span<const int> labels);

/// Columns "Pre.@3 Pre.@5 NDCG@3 NDCG@5 AUC", values x100, one row per model.
std::string format_metrics_table(
    const std::vector<std::pair<std::string, std::vector<PredictionRecord>>>& rows);

}  // namespace skg::classify
