#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace nctopo {

using NodeId = int;                      // 1-based, dense within a scenario
using Link = std::pair<NodeId, NodeId>;  // directed (from, to)

struct Vec2 {
  double x = 0.0;
  double y = 0.0;
};

// Immutable problem instance: node positions in a disk cell plus per-node
// destination sets and the connection boundary delta.
struct Scenario {
  int n_nodes = 0;
  double radius = 0.0;
  double delta = 0.0;
  uint64_t seed = 0;
  std::vector<Vec2> positions;                    // indexed [id - 1]
  std::vector<std::vector<NodeId>> destinations;  // indexed [id - 1], sorted
};

// How generate_scenario assigns destination sets.
//  shared    — one destination group sampled per scenario; D_i = group \ {i}
//  random    — per-node draws without replacement from all other nodes
//  edge_pair — two adjacent destination nodes pinned near the cell edge,
//              shared by everyone (the location-study setup)
enum class DestPolicy { shared, random, edge_pair };

struct ScenarioConfig {
  int n_nodes = 0;
  double radius = 10.0;
  double delta = 10.0;
  int dest_count = 2;
  DestPolicy dest_policy = DestPolicy::shared;
  double edge_frac = 0.95;  // edge_pair: radial position as a fraction of R
};

struct Topology {
  int n_nodes = 0;
  std::set<Link> active_links;
  // Per-destination virtual sublinks; their union must equal active_links
  // when produced by formation. Exhaustive baselines leave this empty.
  std::map<NodeId, std::set<Link>> per_destination;
};

double euclidean_distance(const Scenario& sc, NodeId i, NodeId j);
std::vector<NodeId> neighbor_set(const Scenario& sc, NodeId i);

// Sorted distinct union of all destination sets (the destination group).
std::vector<NodeId> destination_union(const Scenario& sc);

bool reachable(const Topology& topo, NodeId src, NodeId dst);

inline int count_active_links(const Topology& topo) {
  return static_cast<int>(topo.active_links.size());
}

Scenario generate_scenario(const ScenarioConfig& cfg, uint64_t seed);
void validate_scenario(const Scenario& sc);

// Plain-text serialization with exact decimal coordinates (round-trips to
// identical doubles). See README for the format.
std::string scenario_to_text(const Scenario& sc);
Scenario scenario_from_text(const std::string& text);
void save_scenario(const Scenario& sc, const std::string& path);
Scenario load_scenario(const std::string& path);

}  // namespace nctopo
