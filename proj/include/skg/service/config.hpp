#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace skg::service {

/// Everything the pipeline and the server read from the outside world.
/// Loaded from one JSON file; command-line flags override single fields.
struct Config {
  std::filesystem::path data_dir = "skg-data";
  std::uint64_t seed = 42;
  std::string host = "127.0.0.1";
  int port = 8080;

  /// Named input files. Most names take one path; "annotations" may take
  /// several (appended in order, the later rounds refining the earlier).
  std::map<std::string, std::vector<std::filesystem::path>> inputs;

  std::size_t classify_epochs = 40;
  std::size_t classify_dim = 32;
  double classify_threshold = 0.5;

  std::size_t extract_epochs = 200;
  std::size_t extract_top_n = 50;
  double extract_min_recall = 0.2;

  std::size_t relate_epochs = 30;
  std::size_t relate_dim = 16;

  std::size_t netsci_replicates = 1000;
  std::size_t netsci_threads = 0;

  /// N-Triples output of the export stage; empty means the data directory.
  std::filesystem::path export_path;

  /// First path of a named input, if configured.
  std::optional<std::filesystem::path> input(const std::string& name) const;
  const std::vector<std::filesystem::path>& inputs_of(const std::string& name) const;
};

/// Input names the pipeline understands.
const std::vector<std::string>& known_inputs();

/// Parses a config document. Relative paths are taken relative to `base`.
/// Unknown keys are errors, so typos do not pass silently.
Config parse_config(std::string_view json_text, const std::filesystem::path& base);
Config load_config(const std::filesystem::path& path);

/// The config file named by SKG_CONFIG, or defaults when it is unset.
Config default_config();

}  // namespace skg::service
