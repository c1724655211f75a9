#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "nctopo/geometry.hpp"
#include "nctopo/link_game.hpp"

namespace nctopo::formation {

enum class Exec { serial, parallel };

// Which actions the reward terms of the network utility read: the physical
// links (union over destinations; the default reading) or the per-destination
// virtual sublinks. Cost is charged once per physical link either way.
enum class RewardBasis { physical, virtual_links };

// One pairwise game instance: unordered pair (i < j) and a destination.
struct GameJob {
  NodeId i = 0;
  NodeId j = 0;
  NodeId d = 0;
  auto operator<=>(const GameJob&) const = default;
};

// Solved outcome of one game: a_i is i's sublink toward j for destination d.
struct PairProfile {
  NodeId i = 0;
  NodeId j = 0;
  NodeId d = 0;
  int a_i = 0;
  int a_j = 0;
  auto operator<=>(const PairProfile&) const = default;
};

struct FormationResult {
  Topology topology;
  std::vector<PairProfile> per_pair_profiles;  // sorted by (i, j, d); total
  double network_utility = 0.0;
  double lambda = 0.0;
  uint64_t games_solved = 0;
  uint64_t profiles_examined = 0;  // 4 per game
};

// All unordered pairs (i < j) in lexicographic order; empty for n < 2.
std::vector<Link> enumerate_pairs(const Scenario& s);

// Every pair x every distinct destination, in (i, j, d) order. Pairs beyond
// the connection boundary are included; solve_job resolves them to (0,0).
std::vector<GameJob> build_jobs(const Scenario& s);

PairProfile solve_job(const Scenario& s, const GameJob& job, double lambda);

// Deterministic reduction of solved games (any input order) into the physical
// topology, per-destination sublink sets, and the network utility.
FormationResult merge_profiles(const Scenario& s,
                               std::vector<PairProfile> profiles,
                               double lambda);

FormationResult form_topology(const Scenario& s, double lambda,
                              Exec exec = Exec::parallel);

// Subtotal of one unordered pair in the network utility: per-destination
// reward terms in a fixed order, minus lambda once if either direction is
// active. All utility evaluations share this helper so that equal topologies
// produce bitwise-equal utilities.
double pair_utility_term(const Scenario& s, NodeId i, NodeId j, int a_ij,
                         int a_ji, const std::vector<NodeId>& dests,
                         double lambda);

// Network utility of a physical topology (canonical pair-lexicographic sum).
double network_utility(const Scenario& s, const Topology& topo, double lambda);

// Same quantity from per-game profiles; basis selects whether reward terms
// read physical unions or the per-destination sublinks themselves.
double network_utility(const Scenario& s,
                       const std::vector<PairProfile>& profiles, double lambda,
                       RewardBasis basis);

// --- Joint-game oracle -----------------------------------------------------
// The formation result is one game per (pair, destination); the oracle checks
// that solving them independently is sound by enumerating joint profiles of
// all virtual sublinks at once and testing node-level NE conditions on the
// jointly evaluated utilities.

// Components of the joint game: within-boundary pairs x destinations, in
// (i, j, d) order. Component c owns profile bits 2c (a_i) and 2c+1 (a_j).
std::vector<GameJob> joint_components(const Scenario& s);

// Utility of node v under a full joint profile, accumulated from scratch over
// every component involving v.
double joint_node_utility(const Scenario& s, const std::vector<GameJob>& comps,
                          uint64_t profile, NodeId v, double lambda);

// All joint NEs by brute force: every profile, every node, every subset of the
// node's own bits as a deviation. Refuses instances over 14 profile bits.
std::vector<uint64_t> joint_ne_exhaustive(const Scenario& s, double lambda);

struct DecompositionReport {
  int n_components = 0;
  uint64_t profiles_checked = 0;  // 2^(2 * n_components)
  uint64_t joint_ne_count = 0;
  uint64_t pair_ne_product = 0;  // product of per-component pure-NE set sizes
  // True iff every profile is a joint NE exactly when each component profile
  // is a pure NE of its own 2x2 game (the product structure).
  bool product_structure_holds = false;
};

// Streams all joint profiles in Gray-code order, comparing per-node stability
// (from joint utility evaluations) against per-component NE membership (from
// the 2x2 enumeration). Guards: N_V <= 5, at most 2 distinct destinations,
// at most 30 profile bits.
DecompositionReport verify_decomposition(const Scenario& s, double lambda);

// --- Serialization -----------------------------------------------------------
// Summary block of "# key = value" lines, then one "i j d a_i a_j" line per
// game with at least one active sublink.
std::string formation_to_text(const FormationResult& r);
// Rebuilds topology and counters from text; zero profiles stay implicit.
FormationResult formation_from_text(const std::string& text);
void save_formation(const FormationResult& r, const std::string& path);
FormationResult load_formation(const std::string& path);

}  // namespace nctopo::formation
