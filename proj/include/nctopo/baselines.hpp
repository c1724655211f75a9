#pragma once

#include <cstdint>
#include <string>

#include "nctopo/formation.hpp"
#include "nctopo/geometry.hpp"

namespace nctopo::baselines {

using Exec = formation::Exec;

struct StrategyReport {
  Topology topology;
  double network_utility = 0.0;
  double lambda = 0.0;
  // Profiles actually enumerated (restricted to edges within the connection
  // boundary) versus the closed-form full-neighborhood count.
  uint64_t profiles_examined = 0;
  uint64_t theoretical_profiles = 0;
  std::string strategy_name;
};

// Exhaustive maximum of the network utility over all link profiles in which
// every node accepts at most one incoming link from its neighbors. Ties:
// fewest links, then lexicographically smallest edge list. N_V <= 7.
StrategyReport non_nc_centralized(const Scenario& s, double lambda,
                                  Exec exec = Exec::serial);

// Exhaustive maximum over all subsets of feasible directed edges (no
// in-degree restriction). Same tie-breaking. N_V <= 5.
StrategyReport nc_centralized(const Scenario& s, double lambda,
                              Exec exec = Exec::serial);

// Closed-form search-space sizes: "non-nc-centralized" -> n^n,
// "nc-centralized" -> 2^(n(n-1)), "proposed" -> C(n,2)*4, "tcle" -> eta*n^3
// (eta required). Throws std::overflow_error when the count does not fit.
uint64_t search_space_size(const std::string& strategy, int n,
                           uint64_t eta = 0);

// Same line format as formation results ("i j d a_ij a_ji" with d = 0, the
// physical-link marker) plus the counters block.
std::string report_to_text(const StrategyReport& r);
StrategyReport report_from_text(const std::string& text);
void save_report(const StrategyReport& r, const std::string& path);
StrategyReport load_report(const std::string& path);

}  // namespace nctopo::baselines
