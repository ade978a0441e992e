#pragma once

#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "skg/corpus/records.hpp"
#include "skg/geo/geo_index.hpp"
#include "skg/kgstore/graph.hpp"

namespace skg::service {

/// Everything the server answers from, loaded once from a published
/// snapshot directory and never modified afterwards.
struct Snapshot {
  std::string id;
  corpus::FusedCorpus corpus;
  std::vector<std::string> folded_text;  // per paper, parallel to corpus.papers
  std::map<std::string, std::vector<std::size_t>> disciplines;
  geo::GeoIndex geo;
  kg::KnowledgeGraph graph;
  std::map<std::string, std::string> network_stats;  // kind -> JSON document

  std::map<std::string, std::size_t> author_index;  // id -> position in corpus.authors
  std::map<std::string, std::size_t> org_index;
  std::map<std::string, std::size_t> venue_index;

  /// Reads a snapshot directory as published by the export stage (or the
  /// data directory itself, which has the same layout).
  static std::shared_ptr<const Snapshot> load(const std::filesystem::path& dir);
};

/// The server's current snapshot. Readers take a reference-counted handle
/// and keep using it even if a reload swaps in a newer one.
class SnapshotHolder {
 public:
  explicit SnapshotHolder(std::shared_ptr<const Snapshot> s) : current_(std::move(s)) {}

  std::shared_ptr<const Snapshot> get() const {
    std::lock_guard lock(mu_);
    return current_;
  }
  void swap(std::shared_ptr<const Snapshot> s) {
    std::lock_guard lock(mu_);
    current_ = std::move(s);
  }

 private:
  mutable std::mutex mu_;
  std::shared_ptr<const Snapshot> current_;
};

}  // namespace skg::service
