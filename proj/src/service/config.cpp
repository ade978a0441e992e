#include "skg/service/config.hpp"

#include <algorithm>
#include <cstdlib>

#include <json.hpp>

#include "skg/common/error.hpp"
#include "skg/common/io.hpp"

namespace skg::service {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

void check_keys(const json& j, const std::vector<std::string>& allowed, const std::string& where) {
  if (!j.is_object()) throw Error("config: '" + where + "' must be an object");
  for (const auto& [key, value] : j.items()) {
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
      throw Error("config: unknown key '" + key + "' in " + where);
    }
  }
}

template <typename T>
void read(const json& j, const char* key, T& out, const std::string& where) {
  if (!j.contains(key)) return;
  try {
    out = j.at(key).get<T>();
  } catch (const json::exception&) {
    throw Error("config: bad value for '" + std::string(key) + "' in " + where);
  }
}

fs::path resolve(const fs::path& base, const std::string& p) {
  const fs::path path(p);
  return path.is_absolute() ? path : base / path;
}

}  // namespace

const std::vector<std::string>& known_inputs() {
  static const std::vector<std::string> names{
      "acemap",   "cord19",      "digsci",     "preprint",    "gazetteer",
      "training", "glossary",    "annotations", "validation", "relation_annotations",
      "triples",  "citations",   "same_as",    "subclass_of", "topics"};
  return names;
}

std::optional<fs::path> Config::input(const std::string& name) const {
  const auto it = inputs.find(name);
  if (it == inputs.end() || it->second.empty()) return std::nullopt;
  return it->second.front();
}

const std::vector<fs::path>& Config::inputs_of(const std::string& name) const {
  static const std::vector<fs::path> none;
  const auto it = inputs.find(name);
  return it == inputs.end() ? none : it->second;
}

Config parse_config(std::string_view json_text, const fs::path& base) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::exception& e) {
    throw Error(std::string("config: malformed JSON: ") + e.what());
  }
  check_keys(j, {"data_dir", "seed", "server", "inputs", "classify", "extract", "relate", "netsci"},
             "top level");

  Config c;
  if (j.contains("data_dir")) {
    std::string dir;
    read(j, "data_dir", dir, "top level");
    c.data_dir = resolve(base, dir);
  }
  read(j, "seed", c.seed, "top level");

  if (j.contains("server")) {
    const auto& s = j["server"];
    check_keys(s, {"host", "port"}, "server");
    read(s, "host", c.host, "server");
    read(s, "port", c.port, "server");
  }
  if (j.contains("inputs")) {
    const auto& in = j["inputs"];
    check_keys(in, known_inputs(), "inputs");
    for (const auto& [name, value] : in.items()) {
      auto& paths = c.inputs[name];
      if (value.is_string()) {
        paths.push_back(resolve(base, value.get<std::string>()));
      } else if (value.is_array() && name == "annotations") {
        for (const auto& v : value) {
          if (!v.is_string()) throw Error("config: inputs.annotations must hold strings");
          paths.push_back(resolve(base, v.get<std::string>()));
        }
      } else {
        throw Error("config: inputs." + name + " must be a path string");
      }
    }
  }
  if (j.contains("classify")) {
    const auto& s = j["classify"];
    check_keys(s, {"epochs", "dim", "threshold"}, "classify");
    read(s, "epochs", c.classify_epochs, "classify");
    read(s, "dim", c.classify_dim, "classify");
    read(s, "threshold", c.classify_threshold, "classify");
  }
  if (j.contains("extract")) {
    const auto& s = j["extract"];
    check_keys(s, {"epochs", "top_n", "min_recall"}, "extract");
    read(s, "epochs", c.extract_epochs, "extract");
    read(s, "top_n", c.extract_top_n, "extract");
    read(s, "min_recall", c.extract_min_recall, "extract");
  }
  if (j.contains("relate")) {
    const auto& s = j["relate"];
    check_keys(s, {"epochs", "dim"}, "relate");
    read(s, "epochs", c.relate_epochs, "relate");
    read(s, "dim", c.relate_dim, "relate");
  }
  if (j.contains("netsci")) {
    const auto& s = j["netsci"];
    check_keys(s, {"replicates", "threads"}, "netsci");
    read(s, "replicates", c.netsci_replicates, "netsci");
    read(s, "threads", c.netsci_threads, "netsci");
  }
  if (c.classify_threshold <= 0.0 || c.classify_threshold >= 1.0) {
    throw Error("config: classify.threshold must lie in (0, 1)");
  }
  if (c.port < 0 || c.port > 65535) throw Error("config: server.port out of range");
  return c;
}

Config load_config(const fs::path& path) {
  return parse_config(io::read_file(path), path.parent_path());
}

Config default_config() {
  if (const char* p = std::getenv("SKG_CONFIG"); p && *p) return load_config(p);
  return {};
}

}  // namespace skg::service
