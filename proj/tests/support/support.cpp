#include "support.hpp"

#include <unistd.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>
#include <sys/wait.h>

#include "skg/netsci/power_law.hpp"

namespace skg::testing {

namespace fs = std::filesystem;

fs::path fixtures_dir() { return SKG_FIXTURES_DIR; }
fs::path source_dir() { return SKG_SOURCE_DIR; }
fs::path skg_binary() { return SKG_BINARY; }

fs::path fresh_dir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() /
                       ("skg-test-" + std::to_string(::getpid())) / name;
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

double relative_error(const Eigen::VectorXd& a, const Eigen::VectorXd& b, double floor) {
  const double scale = std::max({a.norm(), b.norm(), floor});
  return (a - b).norm() / scale;
}

Eigen::VectorXd numeric_gradient(const std::function<double(const Eigen::VectorXd&)>& f,
                                 const Eigen::VectorXd& x, double h) {
  Eigen::VectorXd g(x.size());
  Eigen::VectorXd p = x;
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    p(i) = x(i) + h;
    const double up = f(p);
    p(i) = x(i) - h;
    const double down = f(p);
    p(i) = x(i);
    g(i) = (up - down) / (2 * h);
  }
  return g;
}

Eigen::VectorXd flatten(const std::vector<const Eigen::MatrixXd*>& parts) {
  Eigen::Index n = 0;
  for (const auto* m : parts) n += m->size();
  Eigen::VectorXd v(n);
  Eigen::Index at = 0;
  for (const auto* m : parts) {
    v.segment(at, m->size()) = Eigen::Map<const Eigen::VectorXd>(m->data(), m->size());
    at += m->size();
  }
  return v;
}

void unflatten(const Eigen::VectorXd& v, const std::vector<Eigen::MatrixXd*>& parts) {
  Eigen::Index at = 0;
  for (auto* m : parts) {
    Eigen::Map<Eigen::VectorXd>(m->data(), m->size()) = v.segment(at, m->size());
    at += m->size();
  }
}

std::vector<classify::LabeledDocument> two_discipline_corpus(std::size_t n, std::uint64_t seed) {
  Rng rng(seed);
  std::array<std::vector<std::string>, 2> vocab;
  for (int side = 0; side < 2; ++side) {
    for (int i = 0; i < 25; ++i) vocab[side].push_back((side ? "beta" : "alpha") + std::to_string(i));
  }
  const std::vector<std::string> filler{"study", "result", "data", "method", "analysis", "report"};
  const std::array<std::size_t, 2> labels{10, 13};
  std::vector<classify::LabeledDocument> docs;
  for (std::size_t d = 0; d < n; ++d) {
    const std::size_t side = d % 2;
    classify::LabeledDocument doc;
    doc.paper_id = "syn" + std::to_string(d);
    doc.labels = {labels[side]};
    for (int t = 0; t < 12; ++t) doc.tokens.push_back(vocab[side][rng.below(vocab[side].size())]);
    for (int t = 0; t < 4; ++t) doc.tokens.push_back(filler[rng.below(filler.size())]);
    rng.shuffle(doc.tokens);
    docs.push_back(std::move(doc));
  }
  return docs;
}

std::vector<extract::RankGroup> separable_rank_groups(std::size_t n, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<extract::RankGroup> groups;
  for (std::size_t g = 0; g < n; ++g) {
    extract::RankGroup group;
    group.paper_id = "g" + std::to_string(g);
    const std::size_t size = 5 + rng.below(6);
    const std::size_t positives = 1 + rng.below(2);
    for (std::size_t i = 0; i < size; ++i) {
      const int label = i < positives ? 1 : 0;
      extract::RankFeatures f;
      f.tfidf_score = label ? rng.uniform(0.55, 1.0) : rng.uniform(0.0, 0.45);
      f.length = 1.0 + static_cast<double>(rng.below(4));
      f.complexity = rng.uniform(0.0, 4.0);
      f.letter_count = 3.0 + static_cast<double>(rng.below(20));
      group.features.push_back(f);
      group.labels.push_back(label);
    }
    // positives are not always first
    std::vector<std::size_t> order(size);
    for (std::size_t i = 0; i < size; ++i) order[i] = i;
    rng.shuffle(order);
    extract::RankGroup shuffled{group.paper_id, {}, {}};
    for (std::size_t i : order) {
      shuffled.features.push_back(group.features[i]);
      shuffled.labels.push_back(group.labels[i]);
    }
    groups.push_back(std::move(shuffled));
  }
  return groups;
}

std::vector<relate::RelationAnnotation> marker_annotations(std::size_t n, std::uint64_t seed) {
  Rng rng(seed);
  const std::array<std::vector<std::string>, relate::kLabelCount> markers{{
      {"isa", "subtype"},
      {"boosts", "reduces"},
      {"correlates", "accompanies"},
      {"near", "beside"},
  }};
  const std::vector<std::string> entities{"virus", "vaccine", "fever", "cough", "mask", "lockdown",
                                          "protein", "antibody", "economy", "school", "anxiety",
                                          "pollution"};
  const std::vector<std::string> filler{"the", "study", "found", "that", "in", "data", "we", "report",
                                        "evidence", "strongly", "recent", "cohort"};
  std::vector<relate::RelationAnnotation> out;
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t label = rng.below(relate::kLabelCount);
    const std::string& head = entities[rng.below(entities.size())];
    std::string tail = head;
    while (tail == head) tail = entities[rng.below(entities.size())];
    const std::string& marker = markers[label][rng.below(2)];
    std::string sentence;
    const auto add_filler = [&](std::size_t k) {
      for (std::size_t j = 0; j < k; ++j) sentence += filler[rng.below(filler.size())] + " ";
    };
    add_filler(rng.below(4));
    sentence += head + " ";
    add_filler(rng.below(2));
    sentence += marker + " ";
    add_filler(rng.below(2));
    sentence += tail;
    for (std::size_t j = rng.below(4); j > 0; --j) sentence += " " + filler[rng.below(filler.size())];
    out.push_back({sentence, head, marker, tail, static_cast<relate::RelationLabel>(label)});
  }
  return out;
}

kg::KnowledgeGraph random_graph(Rng& rng, std::size_t max_nodes) {
  const auto& schema = kg::default_schema();
  kg::KnowledgeGraph g(schema);
  const std::size_t n = 13 + rng.below(max_nodes - 12);
  std::map<kg::ConceptKind, std::vector<std::string>> by_kind;
  for (std::size_t i = 0; i < n; ++i) {
    // every kind gets at least one node
    const auto kind = i < kg::kConceptCount ? kg::all_concepts()[i]
                                            : kg::all_concepts()[rng.below(kg::kConceptCount)];
    kg::Node node{{kind, "n" + std::to_string(i)}, {}};
    if (rng.bernoulli(0.5)) node.properties["p"] = rng.bernoulli(0.5) ? "a" : "b";
    if (rng.bernoulli(0.2)) node.properties["q"] = "x";
    g.upsert_node(node);
    by_kind[kind].push_back(node.key.id);
  }
  const std::vector sigs(schema.signatures().begin(), schema.signatures().end());
  const std::size_t attempts = n * (1 + rng.below(4));
  for (std::size_t e = 0; e < attempts; ++e) {
    const auto& [src, rel, dst] = sigs[rng.below(sigs.size())];
    const auto& sources = by_kind[src];
    const auto& targets = by_kind[dst];
    kg::Edge edge{{{src, sources[rng.below(sources.size())]}, rel,
                   {dst, targets[rng.below(targets.size())]}},
                  std::nullopt};
    if (rng.bernoulli(0.3)) edge.provenance = "prov";
    g.upsert_edge(edge);
  }
  return g;
}

namespace {

bool selects(const kg::NodeSelector& s, const kg::Node& n) {
  if (s.kind.has_value() && *s.kind != n.key.kind) return false;
  if (s.id.has_value() && *s.id != n.key.id) return false;
  for (const auto& kv : s.properties) {
    bool found = false;
    for (const auto& nv : n.properties) found = found || nv == kv;
    if (!found) return false;
  }
  return true;
}

}  // namespace

std::vector<kg::BindingRow> brute_force_traverse(const kg::KnowledgeGraph& g,
                                                 const kg::PathQuery& q) {
  std::vector<kg::BindingRow> rows;
  for (const auto& entry : g.nodes()) {
    if (selects(q.start, entry.second)) rows.push_back({entry.first});
  }
  for (const auto& step : q.steps) {
    std::vector<kg::BindingRow> next;
    for (const auto& row : rows) {
      for (const auto& edge : g.edges()) {
        const kg::EdgeKey& k = edge.first;
        if (k.kind != step.relation) continue;
        const bool forward = step.direction == kg::Direction::forward;
        const kg::NodeKey& from = forward ? k.source : k.target;
        const kg::NodeKey& to = forward ? k.target : k.source;
        if (!(from == row.back())) continue;
        auto extended = row;
        extended.push_back(to);
        next.push_back(std::move(extended));
      }
    }
    rows = std::move(next);
  }
  std::vector<kg::BindingRow> out;
  for (auto& row : rows) {
    if (selects(q.end, g.nodes().at(row.back()))) out.push_back(std::move(row));
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

namespace {

kg::NodeSelector random_selector(const kg::KnowledgeGraph& g, Rng& rng,
                                 std::optional<kg::ConceptKind> kind) {
  kg::NodeSelector s;
  if (kind && rng.bernoulli(0.7)) s.kind = kind;
  if (rng.bernoulli(0.15)) {
    // an id that exists (usually of the right kind) or one that does not
    std::vector<std::string> ids;
    for (const auto& [key, node] : g.nodes()) {
      if (!kind || key.kind == *kind) ids.push_back(key.id);
    }
    s.id = ids.empty() || rng.bernoulli(0.1) ? "missing" : ids[rng.below(ids.size())];
  }
  if (rng.bernoulli(0.25)) s.properties["p"] = rng.bernoulli(0.5) ? "a" : "b";
  return s;
}

}  // namespace

kg::PathQuery random_query(const kg::KnowledgeGraph& g, Rng& rng, std::size_t hops) {
  const auto& sigs = g.schema().signatures();
  kg::PathQuery q;
  const bool chained = rng.bernoulli(0.9);
  auto kind = kg::all_concepts()[rng.below(kg::kConceptCount)];
  const auto start_kind = kind;
  for (std::size_t h = 0; h < hops; ++h) {
    std::vector<kg::Step> options;
    std::vector<kg::ConceptKind> next_kinds;
    for (const auto& [src, rel, dst] : sigs) {
      if (!chained || src == kind) {
        options.push_back({rel, kg::Direction::forward});
        next_kinds.push_back(dst);
      }
      if (!chained || dst == kind) {
        options.push_back({rel, kg::Direction::backward});
        next_kinds.push_back(src);
      }
    }
    if (options.empty()) {
      // dead end for this kind: fall back to any step
      const auto& [src, rel, dst] = *std::next(sigs.begin(), static_cast<long>(rng.below(sigs.size())));
      options.push_back({rel, kg::Direction::forward});
      next_kinds.push_back(dst);
    }
    const std::size_t pick = rng.below(options.size());
    q.steps.push_back(options[pick]);
    kind = next_kinds[pick];
  }
  q.start = random_selector(g, rng, chained ? std::optional(start_kind) : std::nullopt);
  q.end = random_selector(g, rng, chained ? std::optional(kind) : std::nullopt);
  return q;
}

std::string reference_geohash(double lat, double lon, std::size_t precision) {
  static const std::string alphabet = "0123456789bcdefghjkmnpqrstuvwxyz";
  double lat_range[2] = {-90.0, 90.0};
  double lon_range[2] = {-180.0, 180.0};
  std::string bits;
  for (std::size_t i = 0; i < precision * 5; ++i) {
    double* range = i % 2 == 0 ? lon_range : lat_range;
    const double v = i % 2 == 0 ? lon : lat;
    const double mid = (range[0] + range[1]) / 2;
    if (v >= mid) {
      bits += '1';
      range[0] = mid;
    } else {
      bits += '0';
      range[1] = mid;
    }
  }
  std::string out;
  for (std::size_t c = 0; c < precision; ++c) {
    out += alphabet[std::stoi(bits.substr(c * 5, 5), nullptr, 2)];
  }
  return out;
}

std::vector<std::uint64_t> cutoff_power_law_sample(std::size_t n, double kappa, std::uint64_t seed) {
  Rng rng(seed);
  netsci::PowerLawSampler sampler(2.0, 1);
  std::vector<std::uint64_t> out;
  out.reserve(n);
  while (out.size() < n) {
    const auto k = sampler(rng);
    if (rng.uniform() < std::exp(-static_cast<double>(k) / kappa)) out.push_back(k);
  }
  return out;
}

std::vector<std::uint64_t> power_law_sample(std::size_t n, double alpha, std::uint64_t seed) {
  Rng rng(seed);
  netsci::PowerLawSampler sampler(alpha, 1);
  std::vector<std::uint64_t> out(n);
  for (auto& v : out) v = sampler(rng);
  return out;
}

int run_skg(const std::vector<std::string>& args, std::string* output) {
  std::string cmd = "'" + skg_binary().string() + "'";
  for (const auto& a : args) {
    std::string quoted;
    for (char c : a) quoted += c == '\'' ? std::string("'\\''") : std::string(1, c);
    cmd += " '" + quoted + "'";
  }
  cmd += " 2>&1";
  FILE* pipe = ::popen(cmd.c_str(), "r");
  if (!pipe) throw std::runtime_error("popen failed");
  std::string text;
  char buf[4096];
  while (const std::size_t got = std::fread(buf, 1, sizeof buf, pipe)) text.append(buf, got);
  const int status = ::pclose(pipe);
  if (output) *output = text;
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string read_text(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

}  // namespace skg::testing
