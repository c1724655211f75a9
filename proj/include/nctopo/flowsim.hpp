#pragma once

#include <cstdint>
#include <map>
#include <utility>

#include "nctopo/geometry.hpp"

namespace nctopo::flowsim {

enum class Mode { sf, nc };

struct SimConfig {
  Mode mode = Mode::sf;
  int slots = 1;        // horizon, in time slots
  uint64_t seed = 0;    // drives NC coefficient draws and source symbols
  int gf_m = 8;         // field GF(2^m) for NC packets
};

struct SimReport {
  double goodput = 0.0;            // delivered required flows per slot
  double per_node_goodput = 0.0;   // goodput / N_V
  double connection_failure_ratio = 0.0;
  int active_links = 0;
  // (source, destination) -> first slot the flow was delivered. Only required
  // flows (d in D_source) appear.
  std::map<std::pair<NodeId, NodeId>, int> delivered;
};

// Fraction of required flows (i, d in D_i) with no directed path i -> d.
// 0 when the scenario requires no flows at all.
double connection_failure_ratio(const Scenario& s, const Topology& topo);

// Synchronous store-and-forward / network-coding dissemination of one
// generation (one source symbol per node). Each slot, every node with
// outgoing links multicasts exactly one packet decided from slot-start state;
// all incoming packets are received.
SimReport simulate(const Scenario& s, const Topology& topo,
                   const SimConfig& cfg);

}  // namespace nctopo::flowsim
