#include "nctopo/formation.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cstdio>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>
#include <tuple>

#include "nctopo/errors.hpp"

namespace nctopo::formation {

namespace {

bool within_boundary(const Scenario& s, NodeId i, NodeId j) {
  const double dist = euclidean_distance(s, i, j);
  return dist > 0.0 && dist <= s.delta;
}

struct CompReward {
  double r_i = 0.0;
  double r_j = 0.0;
};

std::vector<CompReward> component_rewards(const Scenario& s,
                                          const std::vector<GameJob>& comps) {
  std::vector<CompReward> rw(comps.size());
  for (size_t c = 0; c < comps.size(); ++c) {
    rw[c].r_i = link_game::reward(s, comps[c].i, comps[c].j, comps[c].d);
    rw[c].r_j = link_game::reward(s, comps[c].j, comps[c].i, comps[c].d);
  }
  return rw;
}

double cached_node_utility(const std::vector<GameJob>& comps,
                           const std::vector<CompReward>& rw, uint64_t profile,
                           NodeId v, double lambda) {
  double u = 0.0;
  for (size_t c = 0; c < comps.size(); ++c) {
    const int a_i = static_cast<int>((profile >> (2 * c)) & 1u);
    const int a_j = static_cast<int>((profile >> (2 * c + 1)) & 1u);
    if (comps[c].i == v) {
      u += link_game::utility(a_i, a_j, rw[c].r_i, lambda);
    } else if (comps[c].j == v) {
      u += link_game::utility(a_j, a_i, rw[c].r_j, lambda);
    }
  }
  return u;
}

}  // namespace

std::vector<Link> enumerate_pairs(const Scenario& s) {
  std::vector<Link> pairs;
  for (NodeId i = 1; i <= s.n_nodes; ++i) {
    for (NodeId j = i + 1; j <= s.n_nodes; ++j) pairs.push_back({i, j});
  }
  return pairs;
}

std::vector<GameJob> build_jobs(const Scenario& s) {
  std::vector<GameJob> jobs;
  const auto dests = destination_union(s);
  for (const auto& [i, j] : enumerate_pairs(s)) {
    for (NodeId d : dests) jobs.push_back({i, j, d});
  }
  return jobs;
}

PairProfile solve_job(const Scenario& s, const GameJob& job, double lambda) {
  PairProfile p{job.i, job.j, job.d, 0, 0};
  if (!within_boundary(s, job.i, job.j)) return p;
  const auto table =
      link_game::build_payoff_table(s, job.i, job.j, job.d, lambda);
  const auto prof = link_game::best_response_profile(table);
  p.a_i = prof.a_i;
  p.a_j = prof.a_j;
  return p;
}

FormationResult merge_profiles(const Scenario& s,
                               std::vector<PairProfile> profiles,
                               double lambda) {
  std::sort(profiles.begin(), profiles.end());
  for (size_t k = 1; k < profiles.size(); ++k) {
    const auto& a = profiles[k - 1];
    const auto& b = profiles[k];
    if (a.i == b.i && a.j == b.j && a.d == b.d) {
      throw std::invalid_argument("merge_profiles: duplicate game key");
    }
  }

  FormationResult r;
  r.lambda = lambda;
  r.topology.n_nodes = s.n_nodes;
  for (const auto& p : profiles) {
    if (p.a_i) {
      r.topology.active_links.insert({p.i, p.j});
      r.topology.per_destination[p.d].insert({p.i, p.j});
    }
    if (p.a_j) {
      r.topology.active_links.insert({p.j, p.i});
      r.topology.per_destination[p.d].insert({p.j, p.i});
    }
  }
  r.games_solved = profiles.size();
  r.profiles_examined = 4 * r.games_solved;
  r.per_pair_profiles = std::move(profiles);
  r.network_utility = network_utility(s, r.topology, lambda);
  return r;
}

FormationResult form_topology(const Scenario& s, double lambda, Exec exec) {
  const auto jobs = build_jobs(s);
  std::vector<PairProfile> profiles(jobs.size());
  const auto n_jobs = static_cast<std::int64_t>(jobs.size());
  if (exec == Exec::parallel) {
#pragma omp parallel for schedule(static)
    for (std::int64_t k = 0; k < n_jobs; ++k) {
      profiles[k] = solve_job(s, jobs[k], lambda);
    }
  } else {
    for (std::int64_t k = 0; k < n_jobs; ++k) {
      profiles[k] = solve_job(s, jobs[k], lambda);
    }
  }
  return merge_profiles(s, std::move(profiles), lambda);
}

double pair_utility_term(const Scenario& s, NodeId i, NodeId j, int a_ij,
                         int a_ji, const std::vector<NodeId>& dests,
                         double lambda) {
  if (!a_ij && !a_ji) return 0.0;
  double sub = 0.0;
  for (NodeId d : dests) {
    if (a_ij) sub += link_game::reward(s, i, j, d);
    if (a_ji) sub += link_game::reward(s, j, i, d);
  }
  return sub - lambda;
}

double network_utility(const Scenario& s, const Topology& topo,
                       double lambda) {
  const auto dests = destination_union(s);
  double u = 0.0;
  for (NodeId i = 1; i <= s.n_nodes; ++i) {
    for (NodeId j = i + 1; j <= s.n_nodes; ++j) {
      const int a_ij = topo.active_links.count({i, j}) ? 1 : 0;
      const int a_ji = topo.active_links.count({j, i}) ? 1 : 0;
      u += pair_utility_term(s, i, j, a_ij, a_ji, dests, lambda);
    }
  }
  return u;
}

double network_utility(const Scenario& s,
                       const std::vector<PairProfile>& profiles, double lambda,
                       RewardBasis basis) {
  const auto dests = destination_union(s);
  std::map<Link, std::map<NodeId, std::pair<int, int>>> by_pair;
  for (const auto& p : profiles) by_pair[{p.i, p.j}][p.d] = {p.a_i, p.a_j};

  double u = 0.0;
  for (NodeId i = 1; i <= s.n_nodes; ++i) {
    for (NodeId j = i + 1; j <= s.n_nodes; ++j) {
      const auto it = by_pair.find({i, j});
      if (it == by_pair.end()) continue;
      const auto& per_d = it->second;
      if (basis == RewardBasis::physical) {
        int a_ij = 0, a_ji = 0;
        for (const auto& [d, a] : per_d) {
          a_ij |= a.first;
          a_ji |= a.second;
        }
        u += pair_utility_term(s, i, j, a_ij, a_ji, dests, lambda);
      } else {
        double sub = 0.0;
        bool any = false;
        for (NodeId d : dests) {
          const auto dit = per_d.find(d);
          if (dit == per_d.end()) continue;
          if (dit->second.first) sub += link_game::reward(s, i, j, d);
          if (dit->second.second) sub += link_game::reward(s, j, i, d);
          any = any || dit->second.first || dit->second.second;
        }
        if (any) u += sub - lambda;
      }
    }
  }
  return u;
}

std::vector<GameJob> joint_components(const Scenario& s) {
  std::vector<GameJob> comps;
  const auto dests = destination_union(s);
  for (const auto& [i, j] : enumerate_pairs(s)) {
    if (!within_boundary(s, i, j)) continue;
    for (NodeId d : dests) comps.push_back({i, j, d});
  }
  return comps;
}

double joint_node_utility(const Scenario& s, const std::vector<GameJob>& comps,
                          uint64_t profile, NodeId v, double lambda) {
  return cached_node_utility(comps, component_rewards(s, comps), profile, v,
                             lambda);
}

std::vector<uint64_t> joint_ne_exhaustive(const Scenario& s, double lambda) {
  if (s.n_nodes > 5) throw SizeGuardError("joint_ne_exhaustive: N_V > 5");
  if (destination_union(s).size() > 2) {
    throw SizeGuardError("joint_ne_exhaustive: more than 2 destinations");
  }
  const auto comps = joint_components(s);
  const int bits = 2 * static_cast<int>(comps.size());
  if (bits > 14) {
    throw SizeGuardError("joint_ne_exhaustive: profile space over 14 bits");
  }
  const auto rw = component_rewards(s, comps);

  std::map<NodeId, std::vector<int>> own_bits;
  for (size_t c = 0; c < comps.size(); ++c) {
    own_bits[comps[c].i].push_back(static_cast<int>(2 * c));
    own_bits[comps[c].j].push_back(static_cast<int>(2 * c + 1));
  }

  std::vector<uint64_t> nes;
  const uint64_t total = uint64_t{1} << bits;
  for (uint64_t p = 0; p < total; ++p) {
    bool ne = true;
    for (const auto& [v, bs] : own_bits) {
      const double base = cached_node_utility(comps, rw, p, v, lambda);
      const uint64_t k = bs.size();
      for (uint64_t alt = 0; alt < (uint64_t{1} << k) && ne; ++alt) {
        uint64_t q = p;
        for (uint64_t t = 0; t < k; ++t) {
          q &= ~(uint64_t{1} << bs[t]);
          q |= ((alt >> t) & 1u) << bs[t];
        }
        if (q == p) continue;
        if (cached_node_utility(comps, rw, q, v, lambda) >
            base + link_game::tie_tol) {
          ne = false;
        }
      }
      if (!ne) break;
    }
    if (ne) nes.push_back(p);
  }
  return nes;
}

DecompositionReport verify_decomposition(const Scenario& s, double lambda) {
  if (s.n_nodes > 5) throw SizeGuardError("verify_decomposition: N_V > 5");
  if (destination_union(s).size() > 2) {
    throw SizeGuardError("verify_decomposition: more than 2 destinations");
  }
  const auto comps = joint_components(s);
  const int n_comp = static_cast<int>(comps.size());
  const int bits = 2 * n_comp;
  if (bits > 30) {
    throw SizeGuardError("verify_decomposition: profile space over 30 bits");
  }
  const auto rw = component_rewards(s, comps);

  // Stability of each component state against single-bit deviations, measured
  // on joint utilities at profiles where every other component is zero (zero
  // components contribute exactly 0, so the evaluation is exact).
  std::vector<std::array<bool, 4>> stable(n_comp);
  for (int c = 0; c < n_comp; ++c) {
    for (int st = 0; st < 4; ++st) {
      const uint64_t base = static_cast<uint64_t>(st) << (2 * c);
      const uint64_t dev_i = base ^ (uint64_t{1} << (2 * c));
      const uint64_t dev_j = base ^ (uint64_t{1} << (2 * c + 1));
      const double u_i = cached_node_utility(comps, rw, base, comps[c].i, lambda);
      const double u_id = cached_node_utility(comps, rw, dev_i, comps[c].i, lambda);
      const double u_j = cached_node_utility(comps, rw, base, comps[c].j, lambda);
      const double u_jd = cached_node_utility(comps, rw, dev_j, comps[c].j, lambda);
      stable[c][st] = !(u_id > u_i + link_game::tie_tol) &&
                      !(u_jd > u_j + link_game::tie_tol);
    }
  }

  // Independent side of the comparison: pure-NE membership from the 2x2
  // enumeration on the same rewards.
  std::vector<std::array<bool, 4>> member(n_comp, {false, false, false, false});
  uint64_t product = 1;
  for (int c = 0; c < n_comp; ++c) {
    const auto ne =
        link_game::enumerate_pure_ne(link_game::make_table(rw[c].r_i, rw[c].r_j, lambda));
    for (const auto& p : ne) member[c][p.a_i + 2 * p.a_j] = true;
    product *= ne.size();
  }

  // Gray-code walk over all joint profiles: exactly one bit flips per step,
  // so the unstable/nonmember component counts update in O(1).
  std::vector<int> state(n_comp, 0);
  int unstable = 0;
  int nonmember = 0;
  for (int c = 0; c < n_comp; ++c) {
    unstable += stable[c][0] ? 0 : 1;
    nonmember += member[c][0] ? 0 : 1;
  }

  DecompositionReport rep;
  rep.n_components = n_comp;
  rep.profiles_checked = uint64_t{1} << bits;
  rep.pair_ne_product = product;
  bool bicond = true;
  for (uint64_t p = 0;; ++p) {
    const bool joint_ne = unstable == 0;
    if (joint_ne != (nonmember == 0)) bicond = false;
    if (joint_ne) ++rep.joint_ne_count;
    if (p + 1 == rep.profiles_checked) break;
    const int bit = std::countr_zero(p + 1);
    const int c = bit / 2;
    const int old = state[c];
    const int now = old ^ (1 << (bit & 1));
    state[c] = now;
    unstable += (stable[c][old] ? 0 : -1) + (stable[c][now] ? 0 : 1);
    nonmember += (member[c][old] ? 0 : -1) + (member[c][now] ? 0 : 1);
  }
  rep.product_structure_holds =
      bicond && rep.joint_ne_count == rep.pair_ne_product;
  return rep;
}

namespace {

std::string fmt_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string strip_comment(const std::string& line) {
  const auto pos = line.find('#');
  return pos == std::string::npos ? line : line.substr(0, pos);
}

bool blank(const std::string& line) {
  return line.find_first_not_of(" \t\r") == std::string::npos;
}

[[noreturn]] void fail_at(int line_no, const std::string& what) {
  throw ConfigError("formation text, line " + std::to_string(line_no) + ": " +
                    what);
}

}  // namespace

std::string formation_to_text(const FormationResult& r) {
  std::ostringstream out;
  out << "# formed topology\n";
  out << "n_nodes = " << r.topology.n_nodes << "\n";
  out << "lambda = " << fmt_double(r.lambda) << "\n";
  out << "network_utility = " << fmt_double(r.network_utility) << "\n";
  out << "active_links = " << count_active_links(r.topology) << "\n";
  out << "games_solved = " << r.games_solved << "\n";
  out << "profiles_examined = " << r.profiles_examined << "\n";
  out << "# i j d a_i a_j\n";
  for (const auto& p : r.per_pair_profiles) {
    if (!p.a_i && !p.a_j) continue;
    out << p.i << " " << p.j << " " << p.d << " " << p.a_i << " " << p.a_j
        << "\n";
  }
  return out.str();
}

FormationResult formation_from_text(const std::string& text) {
  FormationResult r;
  std::istringstream in(text);
  std::string raw;
  int line_no = 0;
  int n_nodes = -1;
  int active_links = -1;
  bool saw_lambda = false, saw_utility = false, saw_games = false,
       saw_profiles = false;
  std::set<std::tuple<NodeId, NodeId, NodeId>> seen;

  while (std::getline(in, raw)) {
    ++line_no;
    const std::string line = strip_comment(raw);
    if (blank(line)) continue;

    const auto eq = line.find('=');
    if (eq != std::string::npos) {
      std::istringstream key_in(line.substr(0, eq));
      std::string key;
      key_in >> key;
      std::istringstream val_in(line.substr(eq + 1));
      std::string trailing;
      if (key == "n_nodes") {
        if (!(val_in >> n_nodes) || n_nodes < 1) fail_at(line_no, "bad n_nodes");
      } else if (key == "lambda") {
        if (!(val_in >> r.lambda)) fail_at(line_no, "bad lambda");
        saw_lambda = true;
      } else if (key == "network_utility") {
        if (!(val_in >> r.network_utility)) fail_at(line_no, "bad network_utility");
        saw_utility = true;
      } else if (key == "active_links") {
        if (!(val_in >> active_links) || active_links < 0) {
          fail_at(line_no, "bad active_links");
        }
      } else if (key == "games_solved") {
        if (!(val_in >> r.games_solved)) fail_at(line_no, "bad games_solved");
        saw_games = true;
      } else if (key == "profiles_examined") {
        if (!(val_in >> r.profiles_examined)) {
          fail_at(line_no, "bad profiles_examined");
        }
        saw_profiles = true;
      } else {
        fail_at(line_no, "unknown key '" + key + "'");
      }
      if (val_in >> trailing) fail_at(line_no, "trailing content");
      continue;
    }

    if (n_nodes < 0) fail_at(line_no, "link line before n_nodes");
    PairProfile p;
    std::istringstream row(line);
    std::string trailing;
    if (!(row >> p.i >> p.j >> p.d >> p.a_i >> p.a_j)) {
      fail_at(line_no, "expected 'i j d a_i a_j'");
    }
    if (row >> trailing) fail_at(line_no, "trailing content");
    if (p.i < 1 || p.j < 1 || p.i > n_nodes || p.j > n_nodes || p.i >= p.j) {
      fail_at(line_no, "bad pair indices");
    }
    if (p.d < 1 || p.d > n_nodes) fail_at(line_no, "bad destination index");
    if ((p.a_i != 0 && p.a_i != 1) || (p.a_j != 0 && p.a_j != 1)) {
      fail_at(line_no, "actions must be 0 or 1");
    }
    if (!seen.insert({p.i, p.j, p.d}).second) {
      fail_at(line_no, "duplicate (i, j, d) line");
    }
    r.per_pair_profiles.push_back(p);
  }

  if (n_nodes < 0) throw ConfigError("formation text: missing n_nodes");
  if (!saw_lambda) throw ConfigError("formation text: missing lambda");
  if (!saw_utility) throw ConfigError("formation text: missing network_utility");
  if (!saw_games) throw ConfigError("formation text: missing games_solved");
  if (!saw_profiles) {
    throw ConfigError("formation text: missing profiles_examined");
  }
  if (r.profiles_examined != 4 * r.games_solved) {
    throw ConfigError("formation text: profiles_examined != 4 * games_solved");
  }

  r.topology.n_nodes = n_nodes;
  for (const auto& p : r.per_pair_profiles) {
    if (p.a_i) {
      r.topology.active_links.insert({p.i, p.j});
      r.topology.per_destination[p.d].insert({p.i, p.j});
    }
    if (p.a_j) {
      r.topology.active_links.insert({p.j, p.i});
      r.topology.per_destination[p.d].insert({p.j, p.i});
    }
  }
  if (active_links >= 0 && active_links != count_active_links(r.topology)) {
    throw ConfigError("formation text: active_links does not match link lines");
  }
  return r;
}

void save_formation(const FormationResult& r, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot open for writing: " + path);
  out << formation_to_text(r);
  if (!out.good()) throw ConfigError("write failed: " + path);
}

FormationResult load_formation(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return formation_from_text(buf.str());
}

}  // namespace nctopo::formation
