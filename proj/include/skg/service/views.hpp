#pragma once

#include <vector>

#include <json.hpp>

#include "skg/netsci/degree_stats.hpp"
#include "skg/netsci/network.hpp"

namespace skg::service {

inline constexpr int kApiVersion = 1;

/// The network stats document: the netsci report's fields per side, with
/// the fit (or null) alongside. A NaN p-value (bootstrap not run) is null.
nlohmann::json network_stats_json(const netsci::NetworkGraph& g,
                                  const std::vector<netsci::DegreeStats>& stats);

}  // namespace skg::service
