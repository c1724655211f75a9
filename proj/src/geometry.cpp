#include "nctopo/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <deque>
#include <fstream>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "nctopo/errors.hpp"
#include "nctopo/rng.hpp"

namespace nctopo {

namespace {

void check_node(const Scenario& sc, NodeId i) {
  if (i < 1 || i > sc.n_nodes) {
    throw std::invalid_argument("node index " + std::to_string(i) +
                                " out of range [1, " +
                                std::to_string(sc.n_nodes) + "]");
  }
}

Vec2 sample_in_disk(double radius, Rng& rng) {
  // Radius via sqrt keeps the density uniform over area.
  const double r = radius * std::sqrt(rng.uniform01());
  const double theta = 2.0 * std::numbers::pi * rng.uniform01();
  return {r * std::cos(theta), r * std::sin(theta)};
}

// k distinct ids from [1, n], excluding `exclude` (pass 0 to exclude none).
std::vector<NodeId> sample_distinct(int n, int k, NodeId exclude, Rng& rng) {
  std::vector<NodeId> pool;
  pool.reserve(n);
  for (NodeId v = 1; v <= n; ++v) {
    if (v != exclude) pool.push_back(v);
  }
  for (int t = 0; t < k; ++t) {  // partial Fisher-Yates
    const int j = t + static_cast<int>(rng.below(pool.size() - t));
    std::swap(pool[t], pool[j]);
  }
  pool.resize(k);
  std::sort(pool.begin(), pool.end());
  return pool;
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

[[noreturn]] void parse_fail(int line, const std::string& what) {
  throw ConfigError("scenario text, line " + std::to_string(line) + ": " + what);
}

double parse_double(const std::string& s, int line) {
  const char* begin = s.c_str();
  char* end = nullptr;
  const double v = std::strtod(begin, &end);
  if (end == begin || *end != '\0') parse_fail(line, "bad number '" + s + "'");
  return v;
}

long long parse_int(const std::string& s, int line) {
  const char* begin = s.c_str();
  char* end = nullptr;
  const long long v = std::strtoll(begin, &end, 10);
  if (end == begin || *end != '\0') parse_fail(line, "bad integer '" + s + "'");
  return v;
}

std::vector<std::string> split_ws(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream in(s);
  std::string tok;
  while (in >> tok) out.push_back(tok);
  return out;
}

}  // namespace

double euclidean_distance(const Scenario& sc, NodeId i, NodeId j) {
  check_node(sc, i);
  check_node(sc, j);
  if (i == j) return 0.0;
  const Vec2& a = sc.positions[i - 1];
  const Vec2& b = sc.positions[j - 1];
  return std::hypot(a.x - b.x, a.y - b.y);
}

std::vector<NodeId> neighbor_set(const Scenario& sc, NodeId i) {
  check_node(sc, i);
  std::vector<NodeId> out;
  for (NodeId j = 1; j <= sc.n_nodes; ++j) {
    if (j == i) continue;
    const double d = euclidean_distance(sc, i, j);
    if (d > 0.0 && d <= sc.delta) out.push_back(j);
  }
  return out;
}

std::vector<NodeId> destination_union(const Scenario& sc) {
  std::set<NodeId> all;
  for (const auto& ds : sc.destinations) all.insert(ds.begin(), ds.end());
  return {all.begin(), all.end()};
}

bool reachable(const Topology& topo, NodeId src, NodeId dst) {
  if (src == dst) return true;
  std::vector<std::vector<NodeId>> adj(topo.n_nodes + 1);
  for (const auto& [u, v] : topo.active_links) adj[u].push_back(v);
  std::vector<char> seen(topo.n_nodes + 1, 0);
  std::deque<NodeId> queue{src};
  seen[src] = 1;
  while (!queue.empty()) {
    const NodeId u = queue.front();
    queue.pop_front();
    for (NodeId v : adj[u]) {
      if (v == dst) return true;
      if (!seen[v]) {
        seen[v] = 1;
        queue.push_back(v);
      }
    }
  }
  return false;
}

Scenario generate_scenario(const ScenarioConfig& cfg, uint64_t seed) {
  if (cfg.n_nodes < 2) throw ConfigError("n_nodes must be >= 2");
  if (cfg.radius <= 0.0) throw ConfigError("radius must be positive");
  if (cfg.delta <= 0.0) throw ConfigError("delta must be positive");
  if (cfg.dest_count < 1) throw ConfigError("dest_count must be >= 1");
  switch (cfg.dest_policy) {
    case DestPolicy::shared:
      if (cfg.dest_count > cfg.n_nodes) {
        throw ConfigError("shared destination group larger than the network");
      }
      break;
    case DestPolicy::random:
      if (cfg.dest_count > cfg.n_nodes - 1) {
        throw ConfigError("per-node destination count must leave the node out");
      }
      break;
    case DestPolicy::edge_pair:
      if (cfg.dest_count != 2) {
        throw ConfigError("edge_pair policy places exactly two destinations");
      }
      if (cfg.edge_frac <= 0.0 || cfg.edge_frac > 0.99) {
        throw ConfigError("edge_frac must be in (0, 0.99]");
      }
      break;
  }

  Scenario sc;
  sc.n_nodes = cfg.n_nodes;
  sc.radius = cfg.radius;
  sc.delta = cfg.delta;
  sc.seed = seed;
  sc.positions.resize(cfg.n_nodes);
  sc.destinations.resize(cfg.n_nodes);

  Rng pos_rng(mix_seed(seed, {1}));
  int first_free = 0;
  if (cfg.dest_policy == DestPolicy::edge_pair) {
    // Adjacent pair near the cell edge: nodes 1 and 2.
    const double r = cfg.edge_frac * cfg.radius;
    sc.positions[0] = {r, 0.0};
    sc.positions[1] = {r, 0.05 * cfg.radius};
    first_free = 2;
  }
  for (int k = first_free; k < cfg.n_nodes; ++k) {
    sc.positions[k] = sample_in_disk(cfg.radius, pos_rng);
  }

  Rng dest_rng(mix_seed(seed, {2}));
  switch (cfg.dest_policy) {
    case DestPolicy::shared: {
      const auto group = sample_distinct(cfg.n_nodes, cfg.dest_count, 0, dest_rng);
      for (NodeId i = 1; i <= cfg.n_nodes; ++i) {
        for (NodeId d : group) {
          if (d != i) sc.destinations[i - 1].push_back(d);
        }
      }
      break;
    }
    case DestPolicy::random: {
      for (NodeId i = 1; i <= cfg.n_nodes; ++i) {
        sc.destinations[i - 1] =
            sample_distinct(cfg.n_nodes, cfg.dest_count, i, dest_rng);
      }
      break;
    }
    case DestPolicy::edge_pair: {
      for (NodeId i = 1; i <= cfg.n_nodes; ++i) {
        for (NodeId d : {1, 2}) {
          if (d != i) sc.destinations[i - 1].push_back(d);
        }
      }
      break;
    }
  }

  validate_scenario(sc);
  return sc;
}

void validate_scenario(const Scenario& sc) {
  if (sc.n_nodes < 1) throw ConfigError("scenario has no nodes");
  if (sc.radius <= 0.0) throw ConfigError("radius must be positive");
  if (sc.delta <= 0.0) throw ConfigError("delta must be positive");
  if (static_cast<int>(sc.positions.size()) != sc.n_nodes ||
      static_cast<int>(sc.destinations.size()) != sc.n_nodes) {
    throw ConfigError("positions/destinations arrays must cover every node");
  }
  const double limit = sc.radius * (1.0 + 1e-12) + 1e-12;
  for (int k = 0; k < sc.n_nodes; ++k) {
    const Vec2& p = sc.positions[k];
    if (std::hypot(p.x, p.y) > limit) {
      throw ConfigError("node " + std::to_string(k + 1) +
                        " lies outside the cell radius");
    }
    NodeId prev = 0;
    for (NodeId d : sc.destinations[k]) {
      if (d < 1 || d > sc.n_nodes) {
        throw ConfigError("node " + std::to_string(k + 1) +
                          " has destination out of range");
      }
      if (d == k + 1) {
        throw ConfigError("node " + std::to_string(k + 1) +
                          " lists itself as a destination");
      }
      if (d <= prev) {
        throw ConfigError("destinations of node " + std::to_string(k + 1) +
                          " must be sorted and distinct");
      }
      prev = d;
    }
  }
}

std::string scenario_to_text(const Scenario& sc) {
  std::ostringstream out;
  out << "n_nodes = " << sc.n_nodes << "\n";
  out << "radius = " << format_double(sc.radius) << "\n";
  out << "delta = " << format_double(sc.delta) << "\n";
  out << "seed = " << sc.seed << "\n";
  for (int k = 0; k < sc.n_nodes; ++k) {
    out << "positions[" << (k + 1) << "] = " << format_double(sc.positions[k].x)
        << " " << format_double(sc.positions[k].y) << "\n";
  }
  for (int k = 0; k < sc.n_nodes; ++k) {
    out << "destinations[" << (k + 1) << "] =";
    for (NodeId d : sc.destinations[k]) out << " " << d;
    out << "\n";
  }
  return out.str();
}

Scenario scenario_from_text(const std::string& text) {
  Scenario sc;
  bool have_n = false, have_radius = false, have_delta = false;
  std::vector<char> have_pos, have_dest;

  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    if (split_ws(line).empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) parse_fail(lineno, "expected 'key = value'");
    std::string key = line.substr(0, eq);
    key.erase(0, key.find_first_not_of(" \t"));
    key.erase(key.find_last_not_of(" \t") + 1);
    const std::string value = line.substr(eq + 1);
    const auto fields = split_ws(value);

    auto want_one = [&]() -> const std::string& {
      if (fields.size() != 1) parse_fail(lineno, "expected one value");
      return fields[0];
    };

    if (key == "n_nodes") {
      const long long n = parse_int(want_one(), lineno);
      if (n < 1 || n > 1000000) parse_fail(lineno, "n_nodes out of range");
      sc.n_nodes = static_cast<int>(n);
      sc.positions.resize(sc.n_nodes);
      sc.destinations.resize(sc.n_nodes);
      have_pos.assign(sc.n_nodes, 0);
      have_dest.assign(sc.n_nodes, 0);
      have_n = true;
    } else if (key == "radius") {
      sc.radius = parse_double(want_one(), lineno);
      have_radius = true;
    } else if (key == "delta") {
      sc.delta = parse_double(want_one(), lineno);
      have_delta = true;
    } else if (key == "seed") {
      const char* begin = want_one().c_str();
      char* end = nullptr;
      sc.seed = std::strtoull(begin, &end, 10);
      if (end == begin || *end != '\0') parse_fail(lineno, "bad seed");
    } else if (key.rfind("positions[", 0) == 0 || key.rfind("destinations[", 0) == 0) {
      if (!have_n) parse_fail(lineno, "n_nodes must come before array entries");
      const auto open = key.find('[');
      const auto close = key.find(']');
      if (close == std::string::npos || close != key.size() - 1) {
        parse_fail(lineno, "malformed index in '" + key + "'");
      }
      const long long idx =
          parse_int(key.substr(open + 1, close - open - 1), lineno);
      if (idx < 1 || idx > sc.n_nodes) parse_fail(lineno, "index out of range");
      const int k = static_cast<int>(idx) - 1;
      if (key[0] == 'p') {
        if (fields.size() != 2) parse_fail(lineno, "expected two coordinates");
        if (have_pos[k]) parse_fail(lineno, "duplicate positions entry");
        sc.positions[k] = {parse_double(fields[0], lineno),
                           parse_double(fields[1], lineno)};
        have_pos[k] = 1;
      } else {
        if (have_dest[k]) parse_fail(lineno, "duplicate destinations entry");
        for (const auto& fseg : fields) {
          sc.destinations[k].push_back(
              static_cast<NodeId>(parse_int(fseg, lineno)));
        }
        have_dest[k] = 1;
      }
    } else {
      parse_fail(lineno, "unknown key '" + key + "'");
    }
  }

  if (!have_n) throw ConfigError("scenario text: missing n_nodes");
  if (!have_radius) throw ConfigError("scenario text: missing radius");
  if (!have_delta) throw ConfigError("scenario text: missing delta");
  for (int k = 0; k < sc.n_nodes; ++k) {
    if (!have_pos[k]) {
      throw ConfigError("scenario text: missing positions[" +
                        std::to_string(k + 1) + "]");
    }
  }
  validate_scenario(sc);
  return sc;
}

void save_scenario(const Scenario& sc, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot open '" + path + "' for writing");
  out << scenario_to_text(sc);
  if (!out.good()) throw ConfigError("failed writing '" + path + "'");
}

Scenario load_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return scenario_from_text(buf.str());
}

}  // namespace nctopo
