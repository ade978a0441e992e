#include "skg/classify/vocabulary.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include "skg/common/error.hpp"

namespace skg::classify {

Vocabulary::Vocabulary(std::vector<std::string> tokens, std::vector<double> idf,
                       std::size_t doc_count)
    : tokens_(std::move(tokens)), idf_(std::move(idf)), doc_count_(doc_count) {
  if (tokens_.size() != idf_.size()) throw Error("vocabulary: token/idf size mismatch");
  for (std::size_t i = 0; i < tokens_.size(); ++i) {
    if (!index_.emplace(tokens_[i], i).second) {
      throw Error("vocabulary: duplicate token '" + tokens_[i] + "'");
    }
  }
}

std::optional<std::size_t> Vocabulary::find(const std::string& token) const {
  const auto it = index_.find(token);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

Vocabulary build_vocabulary(const std::vector<std::vector<std::string>>& docs,
                            std::size_t min_df, std::size_t max_vocab,
                            std::vector<std::string>* warnings) {
  if (docs.empty()) throw Error("build_vocabulary: empty corpus");
  std::map<std::string, std::size_t> df;
  for (const auto& doc : docs) {
    for (const auto& t : std::set<std::string>(doc.begin(), doc.end())) ++df[t];
  }
  std::vector<std::pair<std::string, std::size_t>> kept;
  for (const auto& [token, count] : df) {
    if (count >= min_df) kept.emplace_back(token, count);
  }
  std::stable_sort(kept.begin(), kept.end(),
                   [](const auto& a, const auto& b) { return a.second > b.second; });
  if (kept.size() > max_vocab) kept.resize(max_vocab);
  if (kept.empty() && warnings) {
    warnings->push_back("build_vocabulary: no token reaches min_df=" + std::to_string(min_df));
  }

  const double n = static_cast<double>(docs.size());
  std::vector<std::string> tokens;
  std::vector<double> idf;
  for (auto& [token, count] : kept) {
    tokens.push_back(token);
    idf.push_back(std::log(n / static_cast<double>(count)));
  }
  return Vocabulary(std::move(tokens), std::move(idf), docs.size());
}

double FeatureVector::norm() const {
  double s = 0.0;
  for (const auto& [i, w] : entries) s += w * w;
  return std::sqrt(s);
}

FeatureVector featurize(const std::vector<std::string>& tokens, const Vocabulary& vocab) {
  FeatureVector fv;
  if (tokens.empty()) return fv;
  std::map<std::uint32_t, std::size_t> counts;
  for (const auto& t : tokens) {
    if (const auto idx = vocab.find(t)) ++counts[static_cast<std::uint32_t>(*idx)];
  }
  const double len = static_cast<double>(tokens.size());
  for (const auto& [idx, c] : counts) {
    const double w = static_cast<double>(c) / len * vocab.idf(idx);
    if (w > 0.0) fv.entries.emplace_back(idx, w);
  }
  if (const double nrm = fv.norm(); nrm > 0.0) {
    for (auto& e : fv.entries) e.second /= nrm;
  }
  return fv;
}

}  // namespace skg::classify
