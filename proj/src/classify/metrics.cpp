#include "skg/classify/metrics.hpp"

#include <algorithm>
#include <cstdio>
#include <numeric>

#include "skg/common/error.hpp"
#include "skg/common/ranking.hpp"

namespace skg::classify {

double auc_rank_statistic(std::span<const double> scores, std::span<const int> labels) {
  if (scores.size() != labels.size()) throw Error("auc: size mismatch");
  const std::size_t n = scores.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return scores[a] < scores[b]; });
  std::vector<double> rank(n);
  for (std::size_t i = 0; i < n;) {
    std::size_t j = i;
    while (j + 1 < n && scores[order[j + 1]] == scores[order[i]]) ++j;
    const double avg = (static_cast<double>(i + j) / 2.0) + 1.0;
    for (std::size_t t = i; t <= j; ++t) rank[order[t]] = avg;
    i = j + 1;
  }
  double pos_rank_sum = 0.0;
  double pos = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    if (labels[i] > 0) {
      pos_rank_sum += rank[i];
      pos += 1.0;
    }
  }
  const double neg = static_cast<double>(n) - pos;
  if (pos == 0.0 || neg == 0.0) throw Error("auc: needs both positive and negative examples");
  return (pos_rank_sum - pos * (pos + 1.0) / 2.0) / (pos * neg);
}

ClassificationMetrics evaluate(const std::vector<PredictionRecord>& records, std::size_t k) {
  if (records.empty()) throw Error("evaluate: no records");
  if (k == 0) throw Error("evaluate: k must be >= 1");
  const std::size_t labels = records.front().x.size();
  if (k > labels) {
    throw Error("evaluate: k=" + std::to_string(k) + " exceeds label count " +
                std::to_string(labels));
  }
  ClassificationMetrics m;
  m.k = k;
  for (const auto& r : records) {
    if (r.x.size() != labels || r.y.size() != labels) throw Error("evaluate: ragged record " + r.paper_id);
    std::vector<std::size_t> order(labels);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return r.x[a] > r.x[b]; });
    std::vector<int> ranked(labels);
    std::size_t hits = 0;
    for (std::size_t i = 0; i < labels; ++i) {
      ranked[i] = r.y[order[i]];
      if (i < k && ranked[i] > 0) ++hits;
    }
    m.precision_at_k += static_cast<double>(hits) / static_cast<double>(k);
    m.ndcg_at_k += ndcg_at_k(ranked, k);
  }
  const double n = static_cast<double>(records.size());
  m.precision_at_k /= n;
  m.ndcg_at_k /= n;

  std::size_t usable = 0;
  for (std::size_t l = 0; l < labels; ++l) {
    std::vector<double> s;
    std::vector<int> y;
    for (const auto& r : records) {
      s.push_back(r.x[l]);
      y.push_back(r.y[l] > 0 ? 1 : 0);
    }
    const auto pos = std::count(y.begin(), y.end(), 1);
    if (pos == 0 || pos == static_cast<std::ptrdiff_t>(y.size())) continue;
    m.auc += auc_rank_statistic(s, y);
    ++usable;
  }
  if (usable == 0) throw Error("evaluate: no label has both positive and negative records");
  m.auc /= static_cast<double>(usable);
  return m;
}

std::string format_metrics_table(
    const std::vector<std::pair<std::string, std::vector<PredictionRecord>>>& rows) {
  std::string out = "Model                 Pre.@3  Pre.@5  NDCG@3  NDCG@5     AUC\n";
  char buf[160];
  for (const auto& [name, records] : rows) {
    const auto m3 = evaluate(records, 3);
    const auto m5 = evaluate(records, 5);
    std::snprintf(buf, sizeof buf, "%-20s %7.2f %7.2f %7.2f %7.2f %7.2f\n", name.c_str(),
                  100 * m3.precision_at_k, 100 * m5.precision_at_k, 100 * m3.ndcg_at_k,
                  100 * m5.ndcg_at_k, 100 * m3.auc);
    out += buf;
  }
  return out;
}

}  // namespace skg::classify
