#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "skg/netsci/network.hpp"
#include "skg/netsci/power_law.hpp"

namespace skg::netsci {

struct DegreeStats {
  std::string side;  // "nodes", or the partition name for bipartite kinds
  std::size_t size = 0;
  std::size_t volume = 0;  // edge count
  std::size_t max_degree = 0;
  double avg_degree = 0.0;
  std::map<std::size_t, std::size_t> histogram;  // degree -> node count
  std::optional<PowerLawFit> fit;

  friend bool operator==(const DegreeStats&, const DegreeStats&) = default;
};

/// Degree per node: undirected degree for coauthor, in-degree (times cited)
/// for citation, per-side degree for the bipartite kinds.
std::vector<std::uint64_t> degrees(const NetworkGraph& g, bool right_side = false);

/// One entry for unipartite kinds, two (left, right) for bipartite ones.
/// Averages: 2V/N for undirected, V/N for directed and for each bipartite
/// side. An empty graph yields all zeros.
std::vector<DegreeStats> degree_stats(const NetworkGraph& g);

/// Adds a power-law fit of the positive degrees to every side that has
/// enough distinct observations; sides that cannot be fitted are left
/// without one and a note goes to `notes`.
void attach_fits(std::vector<DegreeStats>& stats, const NetworkGraph& g,
                 const PowerLawOptions& options, std::vector<std::string>* notes);

/// Logarithmic bins [0,0], [1,1], [2,3], [4,7], ... as lines
/// "side<TAB>lo<TAB>hi<TAB>count"; empty bins are omitted. Counts sum to the
/// node count of each side.
std::string export_distribution(const NetworkGraph& g);

/// Report with the columns Size, Volume, Max Degree, Avg Degree, alpha,
/// p_value, x_min.
std::string format_report(const std::vector<std::pair<NetworkKind, std::vector<DegreeStats>>>& rows);

}  // namespace skg::netsci
