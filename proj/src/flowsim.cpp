#include "nctopo/flowsim.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <stdexcept>
#include <vector>

#include "nctopo/rlnc.hpp"
#include "nctopo/rng.hpp"

namespace nctopo::flowsim {

namespace {

// Required sources per destination: S_d = { i | d in D_i }.
std::vector<std::set<NodeId>> required_sources(const Scenario& s) {
  std::vector<std::set<NodeId>> at(s.n_nodes + 1);
  for (NodeId i = 1; i <= s.n_nodes; ++i)
    for (NodeId d : s.destinations[i - 1]) at[d].insert(i);
  return at;
}

}  // namespace

double connection_failure_ratio(const Scenario& s, const Topology& topo) {
  int total = 0;
  int failed = 0;
  for (NodeId i = 1; i <= s.n_nodes; ++i)
    for (NodeId d : s.destinations[i - 1]) {
      ++total;
      if (!reachable(topo, i, d)) ++failed;
    }
  if (total == 0) return 0.0;
  return static_cast<double>(failed) / total;
}

SimReport simulate(const Scenario& s, const Topology& topo,
                   const SimConfig& cfg) {
  if (s.n_nodes < 1)
    throw std::invalid_argument("simulate: scenario has no nodes");
  if (topo.n_nodes != s.n_nodes)
    throw std::invalid_argument("simulate: topology/scenario node count mismatch");
  if (cfg.slots < 1) throw std::invalid_argument("simulate: slots must be >= 1");
  if (cfg.gf_m < 1 || cfg.gf_m > 16)
    throw std::invalid_argument("simulate: gf_m must be in [1, 16]");

  const int n = s.n_nodes;
  std::vector<std::vector<NodeId>> out(n + 1), in(n + 1);
  for (const auto& [u, v] : topo.active_links) {
    out[u].push_back(v);
    in[v].push_back(u);
  }

  const auto wanted = required_sources(s);
  auto pending = wanted;  // flows not delivered yet, per destination
  int remaining = 0;
  for (NodeId d = 1; d <= n; ++d) remaining += static_cast<int>(pending[d].size());
  const int total = remaining;

  SimReport r;
  r.active_links = count_active_links(topo);
  r.connection_failure_ratio = connection_failure_ratio(s, topo);

  if (cfg.mode == Mode::sf) {
    // One immutable packet per source, identified by its source id. A node
    // enqueues each distinct packet once (exact duplicates are discarded on
    // receipt), forwards the queue head each slot, and falls back to its own
    // packet when the queue is empty so it always has something to send.
    std::vector<std::deque<NodeId>> queue(n + 1);
    std::vector<std::vector<char>> seen(n + 1, std::vector<char>(n + 1, 0));
    for (NodeId v = 1; v <= n; ++v) {
      queue[v].push_back(v);
      seen[v][v] = 1;
    }
    for (int t = 1; t <= cfg.slots && remaining > 0; ++t) {
      std::vector<NodeId> tx(n + 1, 0);
      for (NodeId v = 1; v <= n; ++v) {
        if (out[v].empty()) continue;
        if (!queue[v].empty()) {
          tx[v] = queue[v].front();
          queue[v].pop_front();
        } else {
          tx[v] = v;
        }
      }
      for (NodeId v = 1; v <= n; ++v)
        for (NodeId u : in[v]) {
          const NodeId pid = tx[u];
          if (pid == 0 || seen[v][pid]) continue;
          seen[v][pid] = 1;
          queue[v].push_back(pid);
          if (pending[v].erase(pid)) {
            r.delivered[{pid, v}] = t;
            --remaining;
          }
        }
    }
  } else {
    // One generation: node v injects symbol x_v at slot 1 as the unit row
    // e_v. Stores grow monotonically with innovative packets only; each slot
    // a transmitting node recombines its whole store plus its own packet with
    // fresh coefficients from its private stream.
    const gf::Field field(cfg.gf_m);
    Rng symbol_rng(mix_seed(cfg.seed, {0}));
    std::vector<gf::Element> x(n + 1, 0);
    std::vector<rlnc::Packet> own;
    own.resize(n + 1);
    for (NodeId v = 1; v <= n; ++v) {
      x[v] = static_cast<gf::Element>(symbol_rng.below(field.size()));
      own[v] = rlnc::source_packet(n, v, {x[v]});
    }
    std::vector<Rng> coeff_rng;
    coeff_rng.reserve(n + 1);
    for (NodeId v = 0; v <= n; ++v)
      coeff_rng.emplace_back(mix_seed(cfg.seed, {static_cast<uint64_t>(v)}));

    std::vector<std::vector<rlnc::Packet>> store(n + 1);
    std::vector<rlnc::Decoder> dec;
    dec.reserve(n + 1);
    for (NodeId v = 0; v <= n; ++v) dec.emplace_back(field, n);
    for (NodeId v = 1; v <= n; ++v) dec[v].add_row(own[v].coeffs, x[v]);

    std::vector<rlnc::Packet> tx(n + 1);
    std::vector<char> sends(n + 1, 0);
    for (int t = 1; t <= cfg.slots && remaining > 0; ++t) {
      for (NodeId v = 1; v <= n; ++v) {
        sends[v] = out[v].empty() ? 0 : 1;
        if (!sends[v]) continue;
        const auto coeffs = rlnc::random_local_coeffs(
            field, static_cast<int>(store[v].size()) + 1, coeff_rng[v]);
        tx[v] = rlnc::encode_at_node(field, own[v], store[v], coeffs);
      }
      for (NodeId v = 1; v <= n; ++v)
        for (NodeId u : in[v]) {
          if (!sends[u]) continue;
          if (dec[v].add_row(tx[u].coeffs, tx[u].payload[0]))
            store[v].push_back(tx[u]);
        }
      for (NodeId d = 1; d <= n; ++d) {
        if (pending[d].empty()) continue;
        for (auto it = pending[d].begin(); it != pending[d].end();) {
          const NodeId k = *it;
          if (dec[d].recoverable(k)) {
            if (dec[d].symbol(k) != x[k])
              throw std::logic_error("simulate: decoded symbol mismatch");
            r.delivered[{k, d}] = t;
            --remaining;
            it = pending[d].erase(it);
          } else {
            ++it;
          }
        }
      }
    }
  }

  int last = 0;
  for (const auto& [flow, slot] : r.delivered) last = std::max(last, slot);
  const double denom =
      (remaining == 0 && total > 0) ? static_cast<double>(last)
                                    : static_cast<double>(cfg.slots);
  r.goodput = static_cast<double>(r.delivered.size()) / denom;
  r.per_node_goodput = r.goodput / n;
  return r;
}

}  // namespace nctopo::flowsim
