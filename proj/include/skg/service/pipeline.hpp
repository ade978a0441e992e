#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "skg/corpus/records.hpp"
#include "skg/service/config.hpp"

namespace skg::service {

enum class Stage {
  ingest,
  fuse,
  classify_train,
  classify,
  extract_train,
  extract,
  relate_train,
  relate,
  build_kg,
  geo_index,
  netsci,
  export_kg,
};

std::string_view to_string(Stage s);  // the subcommand name, e.g. "build-kg"
std::optional<Stage> parse_stage(std::string_view s);
/// Every stage in execution order.
const std::vector<Stage>& all_stages();

/// Where each stage reads and writes under the data directory.
struct Layout {
  std::filesystem::path root;

  std::filesystem::path ingest_dir() const { return root / "ingest"; }
  std::filesystem::path corpus_dir() const { return root / "corpus"; }
  std::filesystem::path locations() const { return corpus_dir() / "locations.tsv"; }
  std::filesystem::path org_locations() const { return corpus_dir() / "org_locations.tsv"; }
  std::filesystem::path models_dir() const { return root / "models"; }
  std::filesystem::path discipline_model() const { return models_dir() / "discipline.model"; }
  std::filesystem::path ranker_model() const { return models_dir() / "ranker.model"; }
  std::filesystem::path threshold() const { return models_dir() / "threshold.txt"; }
  std::filesystem::path relation_model() const { return models_dir() / "relation.model"; }
  std::filesystem::path reports_dir() const { return root / "reports"; }
  std::filesystem::path disciplines() const { return root / "classify" / "disciplines.tsv"; }
  std::filesystem::path tags() const { return root / "extract" / "tags.tsv"; }
  std::filesystem::path relations() const { return root / "relate" / "relations.tsv"; }
  std::filesystem::path unknown_relations() const { return root / "relate" / "unknown.tsv"; }
  std::filesystem::path graph_log() const { return root / "kg" / "graph.log"; }
  std::filesystem::path graph_stats() const { return root / "kg" / "stats.txt"; }
  std::filesystem::path geo_dir() const { return root / "geo"; }
  std::filesystem::path netsci_dir() const { return root / "netsci"; }
  std::filesystem::path ntriples() const { return root / "export" / "kg.nt"; }
  std::filesystem::path snapshots_dir() const { return root / "snapshots"; }
  std::filesystem::path current_snapshot() const { return root / "current"; }
};

/// Maps the references input files use for papers ("doi:<doi>",
/// "<source>:<external id>" or a paper_id) to paper ids.
class PaperRefs {
 public:
  explicit PaperRefs(const corpus::FusedCorpus& corpus);
  std::optional<std::string> resolve(std::string_view ref) const;

 private:
  std::map<std::string, std::string, std::less<>> by_ref_;
};

/// paper_id <TAB> comma-separated discipline indices
std::map<std::string, std::vector<std::size_t>> read_disciplines(const std::filesystem::path& path);

/// Runs pipeline stages against a config. Every stage reads only files
/// written by earlier stages or named in the config, and rewrites its
/// outputs completely, so reruns with the same inputs and seed reproduce
/// them byte for byte. Failures throw skg::Error with the stage named.
class Pipeline {
 public:
  Pipeline(Config config, std::ostream& log);

  void run(Stage stage);
  /// ingest through export, in order.
  void run_all();

  const Config& config() const { return config_; }
  const Layout& layout() const { return layout_; }

 private:
  void ingest();
  void fuse();
  void classify_train();
  void classify();
  void extract_train();
  void extract();
  void relate_train();
  void relate();
  void build_kg();
  void geo_index();
  void netsci();
  void export_kg();

  std::filesystem::path require_input(const std::string& name) const;
  std::filesystem::path require_file(const std::filesystem::path& path) const;
  void note(const std::string& line);

  Config config_;
  Layout layout_;
  std::ostream& log_;
  Stage current_ = Stage::ingest;
};

}  // namespace skg::service
