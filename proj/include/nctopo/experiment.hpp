#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "nctopo/flowsim.hpp"
#include "nctopo/formation.hpp"
#include "nctopo/geometry.hpp"

namespace nctopo::experiment {

using formation::Exec;

enum class Strategy { proposed, non_nc_centralized, nc_centralized };

std::string strategy_name(Strategy s);
std::string mode_name(flowsim::Mode m);

struct ExperimentConfig {
  std::vector<int> n_nodes;
  std::vector<double> lambdas;
  int replications = 200;
  uint64_t seed = 1;
  int dest_count = 2;
  DestPolicy dest_policy = DestPolicy::shared;
  double radius = 10.0;
  double delta_factor = 1.0;  // connection boundary = delta_factor * radius
  double edge_frac = 0.95;    // edge_pair destination placement
  std::vector<Strategy> strategies = {Strategy::proposed};
  std::vector<flowsim::Mode> modes;  // empty: no dissemination, mode = "none"
  int slots = 0;                     // 0: auto horizon 4 * n
  int gf_m = 8;
  bool location_study = false;  // classify nodes by destination distance
};

// Plain-text "key = value" config; '#' starts a comment, lists are
// comma-separated, the lambda grid also accepts "start:step:stop". Throws
// ConfigError with the offending line number.
ExperimentConfig parse_config(const std::string& text);

// Named experiment pipelines at desk scale; full raises replications to 1000.
ExperimentConfig preset(const std::string& name, bool full = false);

// One CSV row per (n, lambda, rep, strategy, mode) cell in grid order with
// columns n, lambda, rep, strategy, mode, active_links, failure_ratio,
// utility, goodput, per_node_goodput, profiles_examined, wall_ms. Goodput
// columns are empty when no dissemination runs. Scenarios are shared across
// lambda within a (n, rep) pair so adjacent-lambda comparisons are paired.
// Byte-identical for a given config and seed except the wall_ms column.
std::string run_sweep(const ExperimentConfig& cfg, Exec exec = Exec::parallel);

// One NEAR/MID/FAR tertile (by mean distance to the destination group, ties
// by node id; destination nodes excluded) with its mean outgoing link count.
struct LocationClass {
  std::string node_class;
  double mean_out_links = 0.0;
  int nodes = 0;
};

std::vector<LocationClass> classify_by_distance(const Scenario& s,
                                                const Topology& topo);

// classify_by_distance over formed topologies, one scenario per (n, rep).
// Columns: n, rep, node_class, mean_out_links, nodes.
std::string run_location_study(const ExperimentConfig& cfg,
                               Exec exec = Exec::parallel);

struct TrendCheck {
  bool ok = true;
  std::string message;  // first violation when !ok
};

// Self-check on a sweep dataset: per (strategy, n) and adjacent lambda pair,
// a two-sided sign test at 5% on per-rep differences must not show active
// links increasing or failure ratio decreasing in lambda.
TrendCheck check_trends(const std::string& sweep_csv);

// Grouped mean / standard error by (n, lambda, strategy, mode). Malformed
// rows are reported by file line number via ConfigError.
std::string summarize(const std::string& sweep_csv);

}  // namespace nctopo::experiment
