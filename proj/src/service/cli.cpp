#include "skg/service/cli.hpp"

#include <CLI11.hpp>

#include <atomic>
#include <chrono>
#include <csignal>
#include <map>
#include <thread>

#include "skg/common/error.hpp"
#include "skg/service/config.hpp"
#include "skg/service/http_server.hpp"
#include "skg/service/pipeline.hpp"
#include "skg/service/snapshot.hpp"

namespace skg::service {

namespace fs = std::filesystem;

namespace {

// Flag name -> config input name, per subcommand.
struct InputFlag {
  const char* flag;
  const char* input;
  const char* help;
};

const std::map<std::string, std::vector<InputFlag>>& stage_inputs() {
  static const std::map<std::string, std::vector<InputFlag>> m{
      {"ingest",
       {{"--acemap", "acemap", "acemap feed (JSON lines)"},
        {"--cord19", "cord19", "cord19 feed (JSON lines)"},
        {"--digsci", "digsci", "digsci feed (JSON lines)"},
        {"--preprint", "preprint", "preprint feed (JSON lines)"}}},
      {"fuse", {{"--gazetteer", "gazetteer", "place name table: name, lat, lon"}}},
      {"classify-train", {{"--training", "training", "labelled training set"}}},
      {"extract-train",
       {{"--glossary", "glossary", "knowledge glossary"},
        {"--annotations", "annotations", "ranking annotation file (repeatable, in round order)"},
        {"--validation", "validation", "annotations used to pick the tag threshold"}}},
      {"extract", {{"--glossary", "glossary", "knowledge glossary"}}},
      {"relate-train", {{"--relation-annotations", "relation_annotations", "labelled triples"}}},
      {"relate",
       {{"--glossary", "glossary", "knowledge glossary"},
        {"--triples", "triples", "open information extraction triples"}}},
      {"build-kg",
       {{"--glossary", "glossary", "knowledge glossary"},
        {"--citations", "citations", "citing paper, cited paper"},
        {"--same-as", "same_as", "entity, external id, external label"},
        {"--subclass-of", "subclass_of", "kind, child, parent"},
        {"--topics", "topics", "paper, topic"}}},
  };
  return m;
}

std::atomic<bool> g_stop{false};
std::atomic<bool> g_reload{false};

extern "C" void on_signal(int sig) {
  if (sig == SIGHUP) {
    g_reload = true;
  } else {
    g_stop = true;
  }
}

int serve(const Config& cfg, const fs::path& snapshot_dir, std::ostream& out, std::ostream& err) {
  SnapshotHolder holder(Snapshot::load(snapshot_dir));
  HttpServer server(holder);
  const int port = server.bind(cfg.host, cfg.port);
  out << "serving snapshot " << holder.get()->id << " on http://" << cfg.host << ":" << port << "\n";
  out.flush();

  g_stop = false;
  g_reload = false;
  std::signal(SIGINT, on_signal);
  std::signal(SIGTERM, on_signal);
  std::signal(SIGHUP, on_signal);
  std::thread watcher([&] {
    while (!g_stop) {
      std::this_thread::sleep_for(std::chrono::milliseconds(100));
      if (g_reload.exchange(false)) {
        try {
          holder.swap(Snapshot::load(snapshot_dir));
          out << "reloaded snapshot " << holder.get()->id << "\n";
          out.flush();
        } catch (const std::exception& e) {
          err << "reload failed, keeping the current snapshot: " << e.what() << "\n";
        }
      }
    }
    server.stop();
  });
  server.run();
  g_stop = true;
  watcher.join();
  return 0;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Scholarly knowledge-graph pipeline and query service", "skg"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string config_path;
  std::string data_dir;
  std::optional<std::uint64_t> seed;
  app.add_option("--config", config_path, "JSON config file (default: $SKG_CONFIG)");
  app.add_option("--data-dir", data_dir, "directory the stages read and write");
  app.add_option("--seed", seed, "seed for every trained or sampled component");

  std::map<std::string, std::vector<std::string>> flag_inputs;
  std::optional<double> threshold;
  std::optional<std::size_t> replicates;
  std::optional<std::size_t> threads;
  std::string export_out;
  std::string host;
  std::optional<int> port;
  std::string snapshot;

  std::map<CLI::App*, std::optional<Stage>> commands;
  const auto add_inputs = [&](CLI::App* sub, const std::vector<InputFlag>& flags) {
    for (const auto& f : flags) {
      if (sub->get_option_no_throw(f.flag)) continue;
      sub->add_option(f.flag, flag_inputs[f.input], f.help);
    }
  };
  for (Stage s : all_stages()) {
    const std::string name(to_string(s));
    auto* sub = app.add_subcommand(name, "run the " + name + " stage");
    if (const auto it = stage_inputs().find(name); it != stage_inputs().end()) add_inputs(sub, it->second);
    if (s == Stage::classify) sub->add_option("--threshold", threshold, "label probability threshold");
    if (s == Stage::netsci) {
      sub->add_option("--replicates", replicates, "bootstrap replicates per fit");
      sub->add_option("--threads", threads, "bootstrap threads (0: all cores)");
    }
    if (s == Stage::export_kg) sub->add_option("--out", export_out, "N-Triples output path");
    commands[sub] = s;
  }
  auto* all = app.add_subcommand("all", "run every stage from ingest to export");
  for (const auto& [name, flags] : stage_inputs()) add_inputs(all, flags);
  all->add_option("--replicates", replicates, "bootstrap replicates per fit");
  all->add_option("--out", export_out, "N-Triples output path");
  commands[all] = std::nullopt;

  auto* serve_cmd = app.add_subcommand("serve", "serve the JSON API over a published snapshot");
  serve_cmd->add_option("--host", host, "address to bind");
  serve_cmd->add_option("--port", port, "port to bind (0: any free port)");
  serve_cmd->add_option("--snapshot", snapshot, "snapshot directory (default: <data-dir>/current)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    err << "skg: " << e.what() << "\n\n" << app.help();
    return 2;
  }

  try {
    Config cfg = config_path.empty() ? default_config() : load_config(config_path);
    if (!data_dir.empty()) cfg.data_dir = data_dir;
    if (seed) cfg.seed = *seed;
    if (threshold) cfg.classify_threshold = *threshold;
    if (replicates) cfg.netsci_replicates = *replicates;
    if (threads) cfg.netsci_threads = *threads;
    if (!export_out.empty()) cfg.export_path = export_out;
    if (!host.empty()) cfg.host = host;
    if (port) cfg.port = *port;
    for (const auto& [name, paths] : flag_inputs) {
      if (paths.empty()) continue;
      auto& dst = cfg.inputs[name];
      dst.assign(paths.begin(), paths.end());
    }

    if (serve_cmd->parsed()) {
      const fs::path dir = snapshot.empty() ? Layout{cfg.data_dir}.current_snapshot() : fs::path(snapshot);
      return serve(cfg, dir, out, err);
    }
    Pipeline pipeline(cfg, out);
    for (const auto& [sub, stage] : commands) {
      if (!sub->parsed()) continue;
      if (stage) {
        pipeline.run(*stage);
      } else {
        pipeline.run_all();
      }
    }
    return 0;
  } catch (const std::exception& e) {
    err << "skg: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace skg::service
