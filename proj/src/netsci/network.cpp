#include "skg/netsci/network.hpp"

#include <algorithm>
#include <array>
#include <functional>
#include <map>
#include <set>

namespace skg::netsci {
namespace {

using kg::ConceptKind;
using kg::RelationKind;

constexpr std::array<std::string_view, 4> kNames{"coauthor", "citation", "author_writes_paper",
                                                 "paper_inspires_author"};

std::uint32_t index_of(const std::vector<std::string>& sorted, const std::string& id) {
  return static_cast<std::uint32_t>(std::lower_bound(sorted.begin(), sorted.end(), id) - sorted.begin());
}

std::vector<std::string> sorted_ids(const std::set<std::string>& s) { return {s.begin(), s.end()}; }

// Tarjan's strongly connected components over the citation edges; every
// component with more than one paper, or a self-citation, is a cycle.
void log_cycles(NetworkGraph& net) {
  const std::size_t n = net.left.size();
  std::vector<std::vector<std::uint32_t>> adj(n);
  for (const auto& [a, b] : net.edges) adj[a].push_back(b);
  std::vector<int> index(n, -1), low(n, 0);
  std::vector<bool> on_stack(n, false);
  std::vector<std::uint32_t> stack;
  int counter = 0;
  // Iterative to stay safe on long citation chains.
  for (std::uint32_t root = 0; root < n; ++root) {
    if (index[root] >= 0) continue;
    std::vector<std::pair<std::uint32_t, std::size_t>> frames{{root, 0}};
    index[root] = low[root] = counter++;
    stack.push_back(root);
    on_stack[root] = true;
    while (!frames.empty()) {
      auto& [v, next] = frames.back();
      if (next < adj[v].size()) {
        const std::uint32_t w = adj[v][next++];
        if (index[w] < 0) {
          index[w] = low[w] = counter++;
          stack.push_back(w);
          on_stack[w] = true;
          frames.push_back({w, 0});
        } else if (on_stack[w]) {
          low[v] = std::min(low[v], index[w]);
        }
        continue;
      }
      if (low[v] == index[v]) {
        std::vector<std::string> members;
        std::uint32_t w = 0;
        do {
          w = stack.back();
          stack.pop_back();
          on_stack[w] = false;
          members.push_back(net.left[w]);
        } while (w != v);
        const bool self_loop = std::find(adj[v].begin(), adj[v].end(), v) != adj[v].end();
        if (members.size() > 1 || self_loop) {
          std::sort(members.begin(), members.end());
          std::string line = "citation cycle among " + std::to_string(members.size()) + " paper(s):";
          for (const auto& m : members) line += " " + m;
          net.log.push_back(std::move(line));
        }
      }
      const std::uint32_t done = v;
      frames.pop_back();
      if (!frames.empty()) {
        auto& parent = frames.back().first;
        low[parent] = std::min(low[parent], low[done]);
      }
    }
  }
  std::sort(net.log.begin(), net.log.end());
}

// paper id -> author ids, from is_written_by edges.
std::map<std::string, std::vector<std::string>> authors_by_paper(const kg::KnowledgeGraph& g) {
  std::map<std::string, std::vector<std::string>> out;
  for (const auto& [k, prov] : g.edges()) {
    if (k.kind == RelationKind::is_written_by) out[k.source.id].push_back(k.target.id);
  }
  return out;
}

// (citing, cited) pairs from is_cited_by edges: "A is_cited_by B" means B cites A.
std::vector<std::pair<std::string, std::string>> citations(const kg::KnowledgeGraph& g) {
  std::vector<std::pair<std::string, std::string>> out;
  for (const auto& [k, prov] : g.edges()) {
    if (k.kind == RelationKind::is_cited_by) out.emplace_back(k.target.id, k.source.id);
  }
  return out;
}

template <typename Pairs>
void fill_edges(NetworkGraph& net, const Pairs& pairs) {
  for (const auto& [a, b] : pairs) {
    const auto ia = index_of(net.left, a);
    const auto ib = index_of(net.bipartite ? net.right : net.left, b);
    if (!net.directed && !net.bipartite) {
      if (ia == ib) continue;
      net.edges.emplace_back(std::min(ia, ib), std::max(ia, ib));
    } else {
      net.edges.emplace_back(ia, ib);
    }
  }
  std::sort(net.edges.begin(), net.edges.end());
  net.edges.erase(std::unique(net.edges.begin(), net.edges.end()), net.edges.end());
}

}  // namespace

std::string_view to_string(NetworkKind k) { return kNames[static_cast<std::size_t>(k)]; }

std::optional<NetworkKind> parse_network_kind(std::string_view s) {
  for (std::size_t i = 0; i < kNames.size(); ++i) {
    if (kNames[i] == s) return static_cast<NetworkKind>(i);
  }
  return std::nullopt;
}

const std::vector<NetworkKind>& all_network_kinds() {
  static const std::vector<NetworkKind> all{NetworkKind::coauthor, NetworkKind::citation,
                                            NetworkKind::author_writes_paper,
                                            NetworkKind::paper_inspires_author};
  return all;
}

NetworkGraph build_network(const kg::KnowledgeGraph& g, NetworkKind kind) {
  NetworkGraph net;
  net.kind = kind;
  switch (kind) {
    case NetworkKind::coauthor: {
      const auto by_paper = authors_by_paper(g);
      std::set<std::string> authors;
      std::vector<std::pair<std::string, std::string>> pairs;
      for (const auto& [paper, list] : by_paper) {
        authors.insert(list.begin(), list.end());
        for (std::size_t i = 0; i < list.size(); ++i) {
          for (std::size_t j = i + 1; j < list.size(); ++j) pairs.emplace_back(list[i], list[j]);
        }
      }
      net.left = sorted_ids(authors);
      fill_edges(net, pairs);
      break;
    }
    case NetworkKind::citation: {
      net.directed = true;
      const auto pairs = citations(g);
      std::set<std::string> papers;
      for (const auto& [a, b] : pairs) {
        papers.insert(a);
        papers.insert(b);
      }
      net.left = sorted_ids(papers);
      fill_edges(net, pairs);
      log_cycles(net);
      break;
    }
    case NetworkKind::author_writes_paper: {
      net.directed = true;
      net.bipartite = true;
      std::set<std::string> authors, papers;
      std::vector<std::pair<std::string, std::string>> pairs;
      for (const auto& [paper, list] : authors_by_paper(g)) {
        papers.insert(paper);
        for (const auto& a : list) {
          authors.insert(a);
          pairs.emplace_back(a, paper);
        }
      }
      net.left = sorted_ids(authors);
      net.right = sorted_ids(papers);
      fill_edges(net, pairs);
      break;
    }
    case NetworkKind::paper_inspires_author: {
      net.directed = true;
      net.bipartite = true;
      const auto by_paper = authors_by_paper(g);
      std::set<std::string> authors, papers;
      std::vector<std::pair<std::string, std::string>> pairs;
      for (const auto& [citing, cited] : citations(g)) {
        const auto it = by_paper.find(citing);
        if (it == by_paper.end()) continue;
        for (const auto& a : it->second) {
          authors.insert(a);
          papers.insert(cited);
          pairs.emplace_back(a, cited);
        }
      }
      net.left = sorted_ids(authors);
      net.right = sorted_ids(papers);
      fill_edges(net, pairs);
      break;
    }
  }
  return net;
}

std::string format_edge_list(const NetworkGraph& g) {
  std::string out;
  const auto& targets = g.bipartite ? g.right : g.left;
  for (const auto& [a, b] : g.edges) out += g.left[a] + "\t" + targets[b] + "\n";
  return out;
}

}  // namespace skg::netsci
