#include "skg/netsci/degree_stats.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "skg/common/error.hpp"

namespace skg::netsci {
namespace {

DegreeStats summarize(const std::string& side, const std::vector<std::uint64_t>& deg,
                      std::size_t volume, double avg_numerator) {
  DegreeStats s;
  s.side = side;
  s.size = deg.size();
  s.volume = volume;
  for (const auto d : deg) {
    s.max_degree = std::max<std::size_t>(s.max_degree, d);
    ++s.histogram[d];
  }
  s.avg_degree = s.size ? avg_numerator / static_cast<double>(s.size) : 0.0;
  return s;
}

std::size_t bin_low(std::uint64_t d) {
  if (d == 0) return 0;
  std::size_t lo = 1;
  while (lo * 2 <= d) lo *= 2;
  return lo;
}

}  // namespace

std::vector<std::uint64_t> degrees(const NetworkGraph& g, bool right_side) {
  if (right_side && !g.bipartite) throw Error("degrees: unipartite graph has no right side");
  std::vector<std::uint64_t> deg(right_side ? g.right.size() : g.left.size(), 0);
  for (const auto& [a, b] : g.edges) {
    if (g.bipartite) {
      ++deg[right_side ? b : a];
    } else if (g.directed) {
      ++deg[b];
    } else {
      ++deg[a];
      ++deg[b];
    }
  }
  return deg;
}

std::vector<DegreeStats> degree_stats(const NetworkGraph& g) {
  const double v = static_cast<double>(g.edges.size());
  if (g.bipartite) {
    return {summarize("author", degrees(g, false), g.edges.size(), v),
            summarize("paper", degrees(g, true), g.edges.size(), v)};
  }
  return {summarize(g.kind == NetworkKind::coauthor ? "author" : "paper", degrees(g),
                    g.edges.size(), g.directed ? v : 2.0 * v)};
}

void attach_fits(std::vector<DegreeStats>& stats, const NetworkGraph& g,
                 const PowerLawOptions& options, std::vector<std::string>* notes) {
  for (std::size_t i = 0; i < stats.size(); ++i) {
    std::vector<std::uint64_t> positive;
    for (const auto d : degrees(g, i == 1)) {
      if (d > 0) positive.push_back(d);
    }
    try {
      stats[i].fit = fit_power_law(positive, options);
    } catch (const Error& e) {
      if (notes) {
        notes->push_back(std::string(to_string(g.kind)) + "/" + stats[i].side + ": " + e.what());
      }
    }
  }
}

std::string export_distribution(const NetworkGraph& g) {
  std::string out;
  const auto stats = degree_stats(g);
  for (const auto& s : stats) {
    std::map<std::size_t, std::size_t> bins;
    for (const auto& [d, n] : s.histogram) bins[bin_low(d)] += n;
    for (const auto& [lo, n] : bins) {
      const std::size_t hi = lo == 0 ? 0 : 2 * lo - 1;
      out += s.side + "\t" + std::to_string(lo) + "\t" + std::to_string(hi) + "\t" +
             std::to_string(n) + "\n";
    }
  }
  return out;
}

std::string format_report(
    const std::vector<std::pair<NetworkKind, std::vector<DegreeStats>>>& rows) {
  std::string out =
      "Network                 Side        Size     Volume  MaxDeg   AvgDeg    alpha  p_value  x_min\n";
  char buf[256];
  for (const auto& [kind, sides] : rows) {
    for (const auto& s : sides) {
      std::snprintf(buf, sizeof buf, "%-23s %-8s %7zu %10zu %7zu %8.2f", std::string(to_string(kind)).c_str(),
                    s.side.c_str(), s.size, s.volume, s.max_degree, s.avg_degree);
      out += buf;
      if (s.fit) {
        std::snprintf(buf, sizeof buf, " %8.3f %8.3f %6llu\n", s.fit->alpha, s.fit->p_value,
                      static_cast<unsigned long long>(s.fit->x_min));
      } else {
        std::snprintf(buf, sizeof buf, " %8s %8s %6s\n", "-", "-", "-");
      }
      out += buf;
    }
  }
  return out;
}

}  // namespace skg::netsci
