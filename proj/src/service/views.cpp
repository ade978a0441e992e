#include "skg/service/views.hpp"

#include <cmath>

namespace skg::service {

using nlohmann::json;

namespace {

json number_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

}  // namespace

json network_stats_json(const netsci::NetworkGraph& g, const std::vector<netsci::DegreeStats>& stats) {
  json sides = json::array();
  for (const auto& s : stats) {
    json fit = nullptr;
    if (s.fit) {
      fit = {{"alpha", number_or_null(s.fit->alpha)},
             {"x_min", s.fit->x_min},
             {"ks", number_or_null(s.fit->ks)},
             {"p_value", number_or_null(s.fit->p_value)},
             {"n_tail", s.fit->n_tail},
             {"n", s.fit->n},
             {"seed", s.fit->seed},
             {"replicates", s.fit->replicates}};
    }
    sides.push_back({{"side", s.side},
                     {"size", s.size},
                     {"volume", s.volume},
                     {"max_degree", s.max_degree},
                     {"avg_degree", number_or_null(s.avg_degree)},
                     {"power_law", fit}});
  }
  return {{"api_version", kApiVersion},
          {"kind", std::string(netsci::to_string(g.kind))},
          {"directed", g.directed},
          {"bipartite", g.bipartite},
          {"sides", sides}};
}

}  // namespace skg::service
