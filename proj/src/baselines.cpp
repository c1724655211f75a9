#include "nctopo/baselines.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cstdio>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "nctopo/errors.hpp"
#include "nctopo/link_game.hpp"

namespace nctopo::baselines {

namespace {

// Per-pair utility subtotals for the four direction combinations, for pairs
// within the connection boundary, in pair-lexicographic order. Summing these
// in table order reproduces network_utility bitwise.
struct PairTable {
  NodeId i = 0;
  NodeId j = 0;
  std::array<double, 4> u = {};  // combo = a_ij + 2 * a_ji
};

std::vector<PairTable> build_tables(const Scenario& s, double lambda) {
  const auto dests = destination_union(s);
  std::vector<PairTable> tables;
  for (NodeId i = 1; i <= s.n_nodes; ++i) {
    for (NodeId j = i + 1; j <= s.n_nodes; ++j) {
      const double dist = euclidean_distance(s, i, j);
      if (!(dist > 0.0 && dist <= s.delta)) continue;
      PairTable t;
      t.i = i;
      t.j = j;
      for (int combo = 0; combo < 4; ++combo) {
        t.u[combo] = formation::pair_utility_term(s, i, j, combo & 1,
                                                  combo >> 1, dests, lambda);
      }
      tables.push_back(t);
    }
  }
  return tables;
}

struct Best {
  bool valid = false;
  double u = 0.0;
  int links = 0;
  std::set<Link> edges;
};

// Total order: higher utility, then fewer links, then lexicographically
// smaller edge list — makes the exhaustive maximum partition-independent.
void consider(Best& best, double u, int links, std::set<Link>&& edges) {
  if (best.valid) {
    if (u < best.u) return;
    if (u == best.u && links > best.links) return;
    if (u == best.u && links == best.links &&
        !std::lexicographical_compare(edges.begin(), edges.end(),
                                      best.edges.begin(), best.edges.end())) {
      return;
    }
  }
  best.valid = true;
  best.u = u;
  best.links = links;
  best.edges = std::move(edges);
}

void merge(Best& into, const Best& from) {
  if (!from.valid) return;
  Best copy = from;
  consider(into, copy.u, copy.links, std::move(copy.edges));
}

StrategyReport finish(const Scenario& s, double lambda, const Best& best,
                      uint64_t examined, uint64_t theoretical,
                      const std::string& name) {
  StrategyReport r;
  r.topology.n_nodes = s.n_nodes;
  r.topology.active_links = best.edges;
  r.network_utility = best.u;
  r.lambda = lambda;
  r.profiles_examined = examined;
  r.theoretical_profiles = theoretical;
  r.strategy_name = name;
  return r;
}

uint64_t checked_mul(uint64_t a, uint64_t b) {
  uint64_t r = 0;
  if (__builtin_mul_overflow(a, b, &r)) {
    throw std::overflow_error("search_space_size: count exceeds 64 bits");
  }
  return r;
}

}  // namespace

StrategyReport non_nc_centralized(const Scenario& s, double lambda,
                                  Exec exec) {
  if (s.n_nodes > 7) throw SizeGuardError("non_nc_centralized: N_V > 7");
  const auto tables = build_tables(s, lambda);
  std::map<Link, int> pair_idx;
  for (size_t k = 0; k < tables.size(); ++k) {
    pair_idx[{tables[k].i, tables[k].j}] = static_cast<int>(k);
  }

  // Choice digit per node: 0 = no incoming link, k = incoming from the k-th
  // neighbor. The profile space is the mixed-radix product of the digits.
  const int n = s.n_nodes;
  std::vector<std::vector<NodeId>> nbrs(n + 1);
  std::vector<uint64_t> radix(n + 1, 1);
  uint64_t total = 1;
  for (NodeId j = 1; j <= n; ++j) {
    nbrs[j] = neighbor_set(s, j);
    radix[j] = nbrs[j].size() + 1;
    total *= radix[j];
  }

  const auto eval = [&](uint64_t p, std::vector<uint8_t>& combo, double& u,
                        int& links, std::set<Link>* edges) {
    std::fill(combo.begin(), combo.end(), 0);
    links = 0;
    for (NodeId j = 1; j <= n; ++j) {
      const auto c = static_cast<size_t>(p % radix[j]);
      p /= radix[j];
      if (c == 0) continue;
      const NodeId i = nbrs[j][c - 1];
      ++links;
      if (edges) edges->insert({i, j});
      if (i < j) {
        combo[pair_idx.at({i, j})] |= 1;
      } else {
        combo[pair_idx.at({j, i})] |= 2;
      }
    }
    u = 0.0;
    for (size_t k = 0; k < tables.size(); ++k) u += tables[k].u[combo[k]];
  };

  Best best;
  const auto total_signed = static_cast<std::int64_t>(total);
  if (exec == Exec::parallel) {
#pragma omp parallel
    {
      Best local;
      std::vector<uint8_t> combo(tables.size());
#pragma omp for schedule(static)
      for (std::int64_t p = 0; p < total_signed; ++p) {
        double u = 0.0;
        int links = 0;
        eval(static_cast<uint64_t>(p), combo, u, links, nullptr);
        if (!local.valid || u > local.u ||
            (u == local.u && links <= local.links)) {
          std::set<Link> edges;
          eval(static_cast<uint64_t>(p), combo, u, links, &edges);
          consider(local, u, links, std::move(edges));
        }
      }
#pragma omp critical
      merge(best, local);
    }
  } else {
    std::vector<uint8_t> combo(tables.size());
    for (std::int64_t p = 0; p < total_signed; ++p) {
      double u = 0.0;
      int links = 0;
      eval(static_cast<uint64_t>(p), combo, u, links, nullptr);
      if (!best.valid || u > best.u || (u == best.u && links <= best.links)) {
        std::set<Link> edges;
        eval(static_cast<uint64_t>(p), combo, u, links, &edges);
        consider(best, u, links, std::move(edges));
      }
    }
  }

  uint64_t theoretical = 1;
  for (int k = 0; k < n; ++k) theoretical = checked_mul(theoretical, n);
  return finish(s, lambda, best, total, theoretical, "non-nc-centralized");
}

StrategyReport nc_centralized(const Scenario& s, double lambda, Exec exec) {
  if (s.n_nodes > 5) throw SizeGuardError("nc_centralized: N_V > 5");
  const auto tables = build_tables(s, lambda);
  const int n_pairs = static_cast<int>(tables.size());
  const uint64_t total = uint64_t{1} << (2 * n_pairs);

  const auto eval = [&](uint64_t mask) {
    double u = 0.0;
    for (int k = 0; k < n_pairs; ++k) u += tables[k].u[(mask >> (2 * k)) & 3];
    return u;
  };
  const auto edges_of = [&](uint64_t mask) {
    std::set<Link> edges;
    for (int k = 0; k < n_pairs; ++k) {
      if ((mask >> (2 * k)) & 1) edges.insert({tables[k].i, tables[k].j});
      if ((mask >> (2 * k + 1)) & 1) edges.insert({tables[k].j, tables[k].i});
    }
    return edges;
  };

  Best best;
  const auto total_signed = static_cast<std::int64_t>(total);
  if (exec == Exec::parallel) {
#pragma omp parallel
    {
      Best local;
#pragma omp for schedule(static)
      for (std::int64_t m = 0; m < total_signed; ++m) {
        const auto mask = static_cast<uint64_t>(m);
        const double u = eval(mask);
        const int links = std::popcount(mask);
        if (!local.valid || u > local.u ||
            (u == local.u && links <= local.links)) {
          consider(local, u, links, edges_of(mask));
        }
      }
#pragma omp critical
      merge(best, local);
    }
  } else {
    for (std::int64_t m = 0; m < total_signed; ++m) {
      const auto mask = static_cast<uint64_t>(m);
      const double u = eval(mask);
      const int links = std::popcount(mask);
      if (!best.valid || u > best.u || (u == best.u && links <= best.links)) {
        consider(best, u, links, edges_of(mask));
      }
    }
  }

  const int exponent = s.n_nodes * (s.n_nodes - 1);
  const uint64_t theoretical = uint64_t{1} << exponent;
  return finish(s, lambda, best, total, theoretical, "nc-centralized");
}

uint64_t search_space_size(const std::string& strategy, int n, uint64_t eta) {
  if (n < 2) throw std::invalid_argument("search_space_size: n must be >= 2");
  if (strategy == "non-nc-centralized") {
    uint64_t r = 1;
    for (int k = 0; k < n; ++k) r = checked_mul(r, static_cast<uint64_t>(n));
    return r;
  }
  if (strategy == "nc-centralized") {
    const int exponent = n * (n - 1);
    if (exponent >= 64) {
      throw std::overflow_error("search_space_size: count exceeds 64 bits");
    }
    return uint64_t{1} << exponent;
  }
  if (strategy == "proposed") {
    return checked_mul(checked_mul(static_cast<uint64_t>(n),
                                   static_cast<uint64_t>(n - 1)),
                       2);  // C(n,2) * 4
  }
  if (strategy == "tcle") {
    if (eta == 0) {
      throw std::invalid_argument("search_space_size: tcle requires eta");
    }
    const auto nn = static_cast<uint64_t>(n);
    return checked_mul(checked_mul(checked_mul(eta, nn), nn), nn);
  }
  throw std::invalid_argument("search_space_size: unknown strategy '" +
                              strategy + "'");
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
  throw ConfigError("baseline text, line " + std::to_string(line_no) + ": " +
                    what);
}

}  // namespace

std::string report_to_text(const StrategyReport& r) {
  std::ostringstream out;
  out << "# centralized baseline\n";
  out << "strategy = " << r.strategy_name << "\n";
  out << "n_nodes = " << r.topology.n_nodes << "\n";
  out << "lambda = " << fmt_double(r.lambda) << "\n";
  out << "network_utility = " << fmt_double(r.network_utility) << "\n";
  out << "active_links = " << count_active_links(r.topology) << "\n";
  out << "profiles_examined = " << r.profiles_examined << "\n";
  out << "theoretical_profiles = " << r.theoretical_profiles << "\n";
  out << "# i j d a_ij a_ji (d = 0: physical links, no destination split)\n";
  std::map<Link, std::pair<int, int>> by_pair;
  for (const auto& [from, to] : r.topology.active_links) {
    if (from < to) {
      by_pair[{from, to}].first = 1;
    } else {
      by_pair[{to, from}].second = 1;
    }
  }
  for (const auto& [pair, combo] : by_pair) {
    out << pair.first << " " << pair.second << " 0 " << combo.first << " "
        << combo.second << "\n";
  }
  return out.str();
}

StrategyReport report_from_text(const std::string& text) {
  StrategyReport r;
  std::istringstream in(text);
  std::string raw;
  int line_no = 0;
  int n_nodes = -1;
  int active_links = -1;
  bool saw_strategy = false, saw_lambda = false, saw_utility = false,
       saw_profiles = false, saw_theoretical = false;
  std::set<Link> seen_pairs;

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
      if (key == "strategy") {
        if (!(val_in >> r.strategy_name)) fail_at(line_no, "bad strategy");
        if (r.strategy_name != "nc-centralized" &&
            r.strategy_name != "non-nc-centralized") {
          fail_at(line_no, "unknown strategy '" + r.strategy_name + "'");
        }
        saw_strategy = true;
      } else if (key == "n_nodes") {
        if (!(val_in >> n_nodes) || n_nodes < 1) fail_at(line_no, "bad n_nodes");
      } else if (key == "lambda") {
        if (!(val_in >> r.lambda)) fail_at(line_no, "bad lambda");
        saw_lambda = true;
      } else if (key == "network_utility") {
        if (!(val_in >> r.network_utility)) {
          fail_at(line_no, "bad network_utility");
        }
        saw_utility = true;
      } else if (key == "active_links") {
        if (!(val_in >> active_links) || active_links < 0) {
          fail_at(line_no, "bad active_links");
        }
      } else if (key == "profiles_examined") {
        if (!(val_in >> r.profiles_examined)) {
          fail_at(line_no, "bad profiles_examined");
        }
        saw_profiles = true;
      } else if (key == "theoretical_profiles") {
        if (!(val_in >> r.theoretical_profiles)) {
          fail_at(line_no, "bad theoretical_profiles");
        }
        saw_theoretical = true;
      } else {
        fail_at(line_no, "unknown key '" + key + "'");
      }
      if (val_in >> trailing) fail_at(line_no, "trailing content");
      continue;
    }

    if (n_nodes < 0) fail_at(line_no, "link line before n_nodes");
    int i = 0, j = 0, d = 0, a_ij = 0, a_ji = 0;
    std::istringstream row(line);
    std::string trailing;
    if (!(row >> i >> j >> d >> a_ij >> a_ji)) {
      fail_at(line_no, "expected 'i j d a_ij a_ji'");
    }
    if (row >> trailing) fail_at(line_no, "trailing content");
    if (i < 1 || j < 1 || i > n_nodes || j > n_nodes || i >= j) {
      fail_at(line_no, "bad pair indices");
    }
    if (d != 0) fail_at(line_no, "baseline links must use d = 0");
    if ((a_ij != 0 && a_ij != 1) || (a_ji != 0 && a_ji != 1)) {
      fail_at(line_no, "actions must be 0 or 1");
    }
    if (!seen_pairs.insert({i, j}).second) {
      fail_at(line_no, "duplicate pair line");
    }
    if (a_ij) r.topology.active_links.insert({i, j});
    if (a_ji) r.topology.active_links.insert({j, i});
  }

  if (n_nodes < 0) throw ConfigError("baseline text: missing n_nodes");
  if (!saw_strategy) throw ConfigError("baseline text: missing strategy");
  if (!saw_lambda) throw ConfigError("baseline text: missing lambda");
  if (!saw_utility) throw ConfigError("baseline text: missing network_utility");
  if (!saw_profiles) {
    throw ConfigError("baseline text: missing profiles_examined");
  }
  if (!saw_theoretical) {
    throw ConfigError("baseline text: missing theoretical_profiles");
  }
  r.topology.n_nodes = n_nodes;
  if (active_links >= 0 && active_links != count_active_links(r.topology)) {
    throw ConfigError("baseline text: active_links does not match link lines");
  }
  return r;
}

void save_report(const StrategyReport& r, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot open for writing: " + path);
  out << report_to_text(r);
  if (!out.good()) throw ConfigError("write failed: " + path);
}

StrategyReport load_report(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return report_from_text(buf.str());
}

}  // namespace nctopo::baselines
