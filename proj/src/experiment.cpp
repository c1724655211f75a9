#include "nctopo/experiment.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <map>
#include <set>
#include <sstream>
#include <tuple>

#include "nctopo/baselines.hpp"
#include "nctopo/errors.hpp"
#include "nctopo/rng.hpp"

namespace nctopo::experiment {

namespace {

std::string fmt(const char* spec, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, spec, v);
  return buf;
}

std::string trim(const std::string& s) {
  size_t a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  size_t b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

[[noreturn]] void fail_line(int line, const std::string& msg) {
  throw ConfigError("config line " + std::to_string(line) + ": " + msg);
}

long long parse_int(const std::string& v, int line, const std::string& key) {
  const std::string t = trim(v);
  char* end = nullptr;
  const long long x = std::strtoll(t.c_str(), &end, 10);
  if (t.empty() || end != t.c_str() + t.size())
    fail_line(line, "bad integer '" + t + "' for " + key);
  return x;
}

double parse_double(const std::string& v, int line, const std::string& key) {
  const std::string t = trim(v);
  char* end = nullptr;
  const double x = std::strtod(t.c_str(), &end);
  if (t.empty() || end != t.c_str() + t.size())
    fail_line(line, "bad number '" + t + "' for " + key);
  return x;
}

std::vector<double> lambda_grid(double lo, double step, double hi) {
  std::vector<double> out;
  for (int k = 0;; ++k) {
    const double v = lo + k * step;
    if (v > hi + step * 1e-9) break;
    out.push_back(v);
  }
  return out;
}

std::vector<double> parse_lambdas(const std::string& v, int line) {
  const std::string t = trim(v);
  if (t.find(':') != std::string::npos) {
    const auto parts = split(t, ':');
    if (parts.size() != 3) fail_line(line, "lambda range needs start:step:stop");
    const double lo = parse_double(parts[0], line, "lambda");
    const double step = parse_double(parts[1], line, "lambda");
    const double hi = parse_double(parts[2], line, "lambda");
    if (step <= 0) fail_line(line, "lambda step must be > 0");
    return lambda_grid(lo, step, hi);
  }
  std::vector<double> out;
  for (const auto& item : split(t, ','))
    out.push_back(parse_double(item, line, "lambda"));
  return out;
}

void validate(const ExperimentConfig& c) {
  if (c.n_nodes.empty()) throw ConfigError("config: n_nodes is required");
  for (int n : c.n_nodes)
    if (n < 2) throw ConfigError("config: n_nodes entries must be >= 2");
  if (c.lambdas.empty()) throw ConfigError("config: lambda grid is required");
  for (double l : c.lambdas)
    if (l < 0.0 || l > 1.0)
      throw ConfigError("config: lambda values must lie in [0, 1]");
  if (c.replications < 1) throw ConfigError("config: replications must be >= 1");
  if (c.radius <= 0.0) throw ConfigError("config: radius must be > 0");
  if (c.delta_factor <= 0.0)
    throw ConfigError("config: delta_factor must be > 0");
  if (c.edge_frac <= 0.0 || c.edge_frac > 1.0)
    throw ConfigError("config: edge_frac must lie in (0, 1]");
  if (c.strategies.empty()) throw ConfigError("config: strategies is required");
  if (c.slots < 0) throw ConfigError("config: slots must be >= 0");
  if (c.gf_m < 1 || c.gf_m > 16) throw ConfigError("config: gf_m must be in [1, 16]");
  const int min_n = *std::min_element(c.n_nodes.begin(), c.n_nodes.end());
  if (c.dest_count < 1 || c.dest_count > min_n - 1)
    throw ConfigError("config: dest_count must be in [1, n-1]");
  if (c.dest_policy == DestPolicy::edge_pair && c.dest_count != 2)
    throw ConfigError("config: edge_pair policy requires dest_count = 2");
}

// Exhaustive baselines have hard instance-size ceilings; refuse the whole
// sweep up front so no worker hits the guard mid-run.
void check_size_guards(const ExperimentConfig& c) {
  const int max_n = *std::max_element(c.n_nodes.begin(), c.n_nodes.end());
  for (Strategy st : c.strategies) {
    if (st == Strategy::non_nc_centralized && max_n > 7)
      throw SizeGuardError("sweep: non-nc-centralized supports n <= 7");
    if (st == Strategy::nc_centralized && max_n > 5)
      throw SizeGuardError("sweep: nc-centralized supports n <= 5");
  }
}

ScenarioConfig scenario_config(const ExperimentConfig& c, int n) {
  ScenarioConfig sc;
  sc.n_nodes = n;
  sc.radius = c.radius;
  sc.delta = c.delta_factor * c.radius;
  sc.dest_count = c.dest_count;
  sc.dest_policy = c.dest_policy;
  sc.edge_frac = c.edge_frac;
  return sc;
}

struct StrategyOutcome {
  Topology topology;
  double utility = 0.0;
  uint64_t profiles = 0;
};

StrategyOutcome run_strategy(Strategy st, const Scenario& s, double lambda) {
  StrategyOutcome out;
  if (st == Strategy::proposed) {
    auto f = formation::form_topology(s, lambda, formation::Exec::serial);
    out.topology = std::move(f.topology);
    out.utility = f.network_utility;
    out.profiles = f.profiles_examined;
  } else {
    auto r = st == Strategy::non_nc_centralized
                 ? baselines::non_nc_centralized(s, lambda, Exec::serial)
                 : baselines::nc_centralized(s, lambda, Exec::serial);
    out.topology = std::move(r.topology);
    out.utility = r.network_utility;
    out.profiles = r.profiles_examined;
  }
  return out;
}

double ms_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(
             std::chrono::steady_clock::now() - t0)
      .count();
}

// P(Bin(m, 1/2) >= k), exact.
double binomial_upper_tail(int m, int k) {
  double tail = 0.0;
  for (int j = k; j <= m; ++j)
    tail += std::exp(std::lgamma(m + 1.0) - std::lgamma(j + 1.0) -
                     std::lgamma(m - j + 1.0) - m * std::log(2.0));
  return std::min(tail, 1.0);
}

constexpr char kSweepHeader[] =
    "n,lambda,rep,strategy,mode,active_links,failure_ratio,utility,goodput,"
    "per_node_goodput,profiles_examined,wall_ms";

}  // namespace

std::string strategy_name(Strategy s) {
  switch (s) {
    case Strategy::proposed: return "proposed";
    case Strategy::non_nc_centralized: return "non-nc-centralized";
    case Strategy::nc_centralized: return "nc-centralized";
  }
  return "?";
}

std::string mode_name(flowsim::Mode m) {
  return m == flowsim::Mode::sf ? "sf" : "nc";
}

ExperimentConfig parse_config(const std::string& text) {
  ExperimentConfig c;
  c.strategies.clear();  // explicit configs must name their strategy set
  std::istringstream in(text);
  std::string raw;
  std::set<std::string> seen;
  bool have_strategies = false;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    std::string s = raw;
    if (const auto hash = s.find('#'); hash != std::string::npos)
      s = s.substr(0, hash);
    s = trim(s);
    if (s.empty()) continue;
    const auto eq = s.find('=');
    if (eq == std::string::npos) fail_line(line, "expected key = value");
    const std::string key = trim(s.substr(0, eq));
    const std::string value = trim(s.substr(eq + 1));
    if (key.empty()) fail_line(line, "empty key");
    if (value.empty()) fail_line(line, "empty value for " + key);
    if (!seen.insert(key).second) fail_line(line, "duplicate key " + key);

    if (key == "n_nodes") {
      c.n_nodes.clear();
      for (const auto& item : split(value, ','))
        c.n_nodes.push_back(static_cast<int>(parse_int(item, line, key)));
    } else if (key == "lambda") {
      c.lambdas = parse_lambdas(value, line);
    } else if (key == "replications") {
      c.replications = static_cast<int>(parse_int(value, line, key));
    } else if (key == "seed") {
      c.seed = static_cast<uint64_t>(parse_int(value, line, key));
    } else if (key == "dest_count") {
      c.dest_count = static_cast<int>(parse_int(value, line, key));
    } else if (key == "dest_policy") {
      if (value == "shared") c.dest_policy = DestPolicy::shared;
      else if (value == "random") c.dest_policy = DestPolicy::random;
      else if (value == "edge_pair") c.dest_policy = DestPolicy::edge_pair;
      else fail_line(line, "unknown dest_policy '" + value + "'");
    } else if (key == "radius") {
      c.radius = parse_double(value, line, key);
    } else if (key == "delta_factor") {
      c.delta_factor = parse_double(value, line, key);
    } else if (key == "edge_frac") {
      c.edge_frac = parse_double(value, line, key);
    } else if (key == "strategies") {
      have_strategies = true;
      for (const auto& item : split(value, ',')) {
        const std::string name = trim(item);
        if (name == "proposed") c.strategies.push_back(Strategy::proposed);
        else if (name == "non-nc-centralized")
          c.strategies.push_back(Strategy::non_nc_centralized);
        else if (name == "nc-centralized")
          c.strategies.push_back(Strategy::nc_centralized);
        else fail_line(line, "unknown strategy '" + name + "'");
      }
    } else if (key == "modes") {
      for (const auto& item : split(value, ',')) {
        const std::string name = trim(item);
        if (name == "sf") c.modes.push_back(flowsim::Mode::sf);
        else if (name == "nc") c.modes.push_back(flowsim::Mode::nc);
        else if (name == "none") {
          if (split(value, ',').size() != 1)
            fail_line(line, "mode none excludes other modes");
        } else {
          fail_line(line, "unknown mode '" + name + "'");
        }
      }
    } else if (key == "slots") {
      c.slots = static_cast<int>(parse_int(value, line, key));
    } else if (key == "gf_m") {
      c.gf_m = static_cast<int>(parse_int(value, line, key));
    } else if (key == "study") {
      if (value == "sweep") c.location_study = false;
      else if (value == "location") c.location_study = true;
      else fail_line(line, "unknown study '" + value + "'");
    } else {
      fail_line(line, "unknown key '" + key + "'");
    }
  }
  if (!have_strategies) c.strategies = {Strategy::proposed};
  validate(c);
  return c;
}

ExperimentConfig preset(const std::string& name, bool full) {
  ExperimentConfig c;
  c.replications = full ? 1000 : 200;
  if (name == "fig2") {
    // Outgoing links by node location: shared destination pair at the cell
    // edge. The formation cost is not part of the published setup; 0.3 keeps
    // mid-sweep link densities.
    c.n_nodes = {50};
    c.lambdas = {0.3};
    c.dest_policy = DestPolicy::edge_pair;
    c.location_study = true;
  } else if (name == "fig4" || name == "fig5") {
    // Active links / connection failure ratio versus unit cost.
    c.n_nodes = {30, 50};
    c.lambdas = lambda_grid(0.0, 0.1, 1.0);
  } else if (name == "fig6") {
    // Goodput versus unit cost, boundary 1.1R.
    c.n_nodes = {30};
    c.lambdas = lambda_grid(0.0, 0.1, 1.0);
    c.delta_factor = 1.1;
    c.modes = {flowsim::Mode::sf, flowsim::Mode::nc};
  } else if (name == "fig7") {
    // Goodput versus network size at a cheap unit cost, boundary 1.1R.
    c.n_nodes = {10, 20, 30, 40, 50};
    c.lambdas = {0.1};
    c.delta_factor = 1.1;
    c.modes = {flowsim::Mode::sf, flowsim::Mode::nc};
  } else if (name == "fig8-desk") {
    // Utility ordering across strategies, small enough for the exhaustive
    // baselines.
    c.n_nodes = {5};
    c.lambdas = lambda_grid(0.0, 0.1, 1.0);
    c.strategies = {Strategy::proposed, Strategy::non_nc_centralized,
                    Strategy::nc_centralized};
  } else {
    throw ConfigError("unknown preset '" + name + "'");
  }
  validate(c);
  return c;
}

std::string run_sweep(const ExperimentConfig& cfg, Exec exec) {
  validate(cfg);
  check_size_guards(cfg);

  struct Cell {
    int n = 0;
    int li = 0;
    int rep = 0;
  };
  std::vector<Cell> cells;
  for (int n : cfg.n_nodes)
    for (int li = 0; li < static_cast<int>(cfg.lambdas.size()); ++li)
      for (int rep = 0; rep < cfg.replications; ++rep)
        cells.push_back({n, li, rep});

  std::vector<std::string> rows(cells.size());
  std::string error;
  const int total = static_cast<int>(cells.size());

#pragma omp parallel for schedule(dynamic) if (exec == Exec::parallel)
  for (int ci = 0; ci < total; ++ci) {
    try {
      const Cell cell = cells[ci];
      const double lambda = cfg.lambdas[cell.li];
      const auto s = generate_scenario(
          scenario_config(cfg, cell.n),
          mix_seed(cfg.seed, {static_cast<uint64_t>(cell.n),
                              static_cast<uint64_t>(cell.rep)}));
      std::ostringstream buf;
      for (Strategy st : cfg.strategies) {
        const auto t0 = std::chrono::steady_clock::now();
        const auto out = run_strategy(st, s, lambda);
        const double strat_ms = ms_since(t0);
        const int active = count_active_links(out.topology);
        const double fail = flowsim::connection_failure_ratio(s, out.topology);
        const std::string prefix =
            std::to_string(cell.n) + "," + fmt("%.12g", lambda) + "," +
            std::to_string(cell.rep) + "," + strategy_name(st);
        const std::string body = "," + std::to_string(active) + "," +
                                 fmt("%.12g", fail) + "," +
                                 fmt("%.17g", out.utility);
        if (cfg.modes.empty()) {
          buf << prefix << ",none" << body << ",,,"
              << out.profiles << "," << fmt("%.3f", strat_ms) << "\n";
        } else {
          for (int mi = 0; mi < static_cast<int>(cfg.modes.size()); ++mi) {
            flowsim::SimConfig sim;
            sim.mode = cfg.modes[mi];
            sim.slots = cfg.slots > 0 ? cfg.slots : 4 * cell.n;
            sim.seed = mix_seed(cfg.seed, {static_cast<uint64_t>(cell.n),
                                           static_cast<uint64_t>(cell.li),
                                           static_cast<uint64_t>(cell.rep),
                                           100 + static_cast<uint64_t>(mi)});
            sim.gf_m = cfg.gf_m;
            const auto t1 = std::chrono::steady_clock::now();
            const auto r = flowsim::simulate(s, out.topology, sim);
            const double wall = strat_ms + ms_since(t1);
            buf << prefix << "," << mode_name(sim.mode) << body << ","
                << fmt("%.12g", r.goodput) << ","
                << fmt("%.12g", r.per_node_goodput) << "," << out.profiles
                << "," << fmt("%.3f", wall) << "\n";
          }
        }
      }
      rows[ci] = buf.str();
    } catch (const std::exception& e) {
#pragma omp critical
      if (error.empty()) error = e.what();
    }
  }
  if (!error.empty()) throw std::runtime_error("sweep: " + error);

  std::string csv = std::string(kSweepHeader) + "\n";
  for (const auto& row : rows) csv += row;
  return csv;
}

std::vector<LocationClass> classify_by_distance(const Scenario& s,
                                                const Topology& topo) {
  std::vector<int> out_deg(s.n_nodes + 1, 0);
  for (const auto& [u, v] : topo.active_links) ++out_deg[u];

  const auto group = destination_union(s);
  std::vector<std::pair<double, NodeId>> order;  // (mean distance, id)
  for (NodeId v = 1; v <= s.n_nodes; ++v) {
    if (std::find(group.begin(), group.end(), v) != group.end()) continue;
    double d = 0.0;
    for (NodeId g : group) d += euclidean_distance(s, v, g);
    order.push_back({d / static_cast<double>(group.size()), v});
  }
  std::sort(order.begin(), order.end());

  static const char* kClass[3] = {"NEAR", "MID", "FAR"};
  const int m = static_cast<int>(order.size());
  std::vector<LocationClass> out(3);
  int at = 0;
  for (int cls = 0; cls < 3; ++cls) {
    const int size = m / 3 + (cls < m % 3 ? 1 : 0);
    double mean = 0.0;
    for (int k = 0; k < size; ++k) mean += out_deg[order[at + k].second];
    if (size > 0) mean /= size;
    at += size;
    out[cls] = {kClass[cls], mean, size};
  }
  return out;
}

std::string run_location_study(const ExperimentConfig& cfg, Exec exec) {
  validate(cfg);
  if (cfg.dest_policy != DestPolicy::edge_pair)
    throw ConfigError("location study requires dest_policy = edge_pair");

  struct Cell {
    int n = 0;
    int rep = 0;
  };
  std::vector<Cell> cells;
  for (int n : cfg.n_nodes)
    for (int rep = 0; rep < cfg.replications; ++rep) cells.push_back({n, rep});

  const double lambda = cfg.lambdas.front();
  std::vector<std::string> rows(cells.size());
  std::string error;
  const int total = static_cast<int>(cells.size());

#pragma omp parallel for schedule(dynamic) if (exec == Exec::parallel)
  for (int ci = 0; ci < total; ++ci) {
    try {
      const Cell cell = cells[ci];
      const auto s = generate_scenario(
          scenario_config(cfg, cell.n),
          mix_seed(cfg.seed, {static_cast<uint64_t>(cell.n),
                              static_cast<uint64_t>(cell.rep)}));
      const auto f = formation::form_topology(s, lambda, formation::Exec::serial);
      std::ostringstream buf;
      for (const auto& cls : classify_by_distance(s, f.topology))
        buf << cell.n << "," << cell.rep << "," << cls.node_class << ","
            << fmt("%.12g", cls.mean_out_links) << "," << cls.nodes << "\n";
      rows[ci] = buf.str();
    } catch (const std::exception& e) {
#pragma omp critical
      if (error.empty()) error = e.what();
    }
  }
  if (!error.empty()) throw std::runtime_error("location study: " + error);

  std::string csv = "n,rep,node_class,mean_out_links,nodes\n";
  for (const auto& row : rows) csv += row;
  return csv;
}

namespace {

struct ParsedSweep {
  std::vector<std::string> columns;
  // field strings per row, aligned with columns; row_lines[i] is the 1-based
  // input line of data row i.
  std::vector<std::vector<std::string>> rows;
  std::vector<int> row_lines;
};

int column_index(const ParsedSweep& p, const std::string& name) {
  for (int i = 0; i < static_cast<int>(p.columns.size()); ++i)
    if (p.columns[i] == name) return i;
  throw ConfigError("summarize: row 1: missing column '" + name + "'");
}

ParsedSweep parse_csv(const std::string& csv) {
  ParsedSweep p;
  std::istringstream in(csv);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (trim(line).empty()) continue;
    auto fields = split(line, ',');
    if (p.columns.empty()) {
      p.columns = std::move(fields);
      continue;
    }
    if (fields.size() != p.columns.size())
      throw ConfigError("summarize: row " + std::to_string(line_no) +
                        ": expected " + std::to_string(p.columns.size()) +
                        " fields, got " + std::to_string(fields.size()));
    p.rows.push_back(std::move(fields));
    p.row_lines.push_back(line_no);
  }
  return p;
}

double field_double(const ParsedSweep& p, int row, int col) {
  const std::string& t = p.rows[row][col];
  char* end = nullptr;
  const double x = std::strtod(t.c_str(), &end);
  if (t.empty() || end != t.c_str() + t.size())
    throw ConfigError("summarize: row " + std::to_string(p.row_lines[row]) +
                      ": bad number '" + t + "' in column '" +
                      p.columns[col] + "'");
  return x;
}

struct Welford {
  long long count = 0;
  double mean = 0.0;
  double m2 = 0.0;

  void add(double x) {
    ++count;
    const double d = x - mean;
    mean += d / static_cast<double>(count);
    m2 += d * (x - mean);
  }
  double se() const {
    if (count < 2) return 0.0;
    const double var = m2 / static_cast<double>(count - 1);
    return std::sqrt(var / static_cast<double>(count));
  }
};

}  // namespace

TrendCheck check_trends(const std::string& sweep_csv) {
  const auto p = parse_csv(sweep_csv);
  TrendCheck out;
  if (p.rows.empty()) return out;
  const int c_n = column_index(p, "n");
  const int c_lambda = column_index(p, "lambda");
  const int c_rep = column_index(p, "rep");
  const int c_strategy = column_index(p, "strategy");
  const int c_active = column_index(p, "active_links");
  const int c_fail = column_index(p, "failure_ratio");

  // (strategy, n) -> lambda -> rep -> (active, fail); duplicate mode rows of
  // one cell collapse onto the same entry.
  std::map<std::pair<std::string, int>,
           std::map<double, std::map<int, std::pair<double, double>>>>
      data;
  for (int i = 0; i < static_cast<int>(p.rows.size()); ++i) {
    const int n = static_cast<int>(field_double(p, i, c_n));
    const double lambda = field_double(p, i, c_lambda);
    const int rep = static_cast<int>(field_double(p, i, c_rep));
    data[{p.rows[i][c_strategy], n}][lambda][rep] = {
        field_double(p, i, c_active), field_double(p, i, c_fail)};
  }

  for (const auto& [key, by_lambda] : data) {
    std::vector<double> lambdas;
    for (const auto& [l, reps] : by_lambda) lambdas.push_back(l);
    for (size_t k = 0; k + 1 < lambdas.size(); ++k) {
      const auto& lo = by_lambda.at(lambdas[k]);
      const auto& hi = by_lambda.at(lambdas[k + 1]);
      int active_up = 0, active_down = 0, fail_up = 0, fail_down = 0;
      for (const auto& [rep, v] : lo) {
        const auto it = hi.find(rep);
        if (it == hi.end()) continue;
        if (it->second.first > v.first) ++active_up;
        if (it->second.first < v.first) ++active_down;
        if (it->second.second > v.second) ++fail_up;
        if (it->second.second < v.second) ++fail_down;
      }
      const auto violated = [](int wrong, int right) {
        const int m = wrong + right;
        if (m == 0 || wrong <= right) return false;
        return 2.0 * binomial_upper_tail(m, wrong) <= 0.05;
      };
      const std::string where =
          " between lambda " + fmt("%.12g", lambdas[k]) + " and " +
          fmt("%.12g", lambdas[k + 1]) + " (strategy " + key.first +
          ", n = " + std::to_string(key.second) + ")";
      if (violated(active_up, active_down)) {
        out.ok = false;
        out.message = "active links increase" + where;
        return out;
      }
      if (violated(fail_down, fail_up)) {
        out.ok = false;
        out.message = "failure ratio decreases" + where;
        return out;
      }
    }
  }
  return out;
}

std::string summarize(const std::string& sweep_csv) {
  static const char* kMetrics[] = {"active_links", "failure_ratio", "utility",
                                   "goodput", "per_node_goodput"};
  std::string header = "n,lambda,strategy,mode,rows";
  for (const char* m : kMetrics)
    header += "," + std::string(m) + "_mean," + std::string(m) + "_se";
  header += "\n";

  const auto p = parse_csv(sweep_csv);
  if (p.rows.empty()) return header;

  const int c_n = column_index(p, "n");
  const int c_lambda = column_index(p, "lambda");
  const int c_strategy = column_index(p, "strategy");
  const int c_mode = column_index(p, "mode");
  int c_metric[5];
  for (int k = 0; k < 5; ++k) c_metric[k] = column_index(p, kMetrics[k]);

  struct Group {
    long long rows = 0;
    Welford metric[5];
  };
  std::map<std::tuple<int, double, std::string, std::string>, Group> groups;
  for (int i = 0; i < static_cast<int>(p.rows.size()); ++i) {
    auto& g = groups[{static_cast<int>(field_double(p, i, c_n)),
                      field_double(p, i, c_lambda), p.rows[i][c_strategy],
                      p.rows[i][c_mode]}];
    ++g.rows;
    for (int k = 0; k < 5; ++k) {
      if (p.rows[i][c_metric[k]].empty()) continue;  // not simulated
      g.metric[k].add(field_double(p, i, c_metric[k]));
    }
  }

  std::string csv = header;
  for (const auto& [key, g] : groups) {
    csv += std::to_string(std::get<0>(key)) + "," +
           fmt("%.12g", std::get<1>(key)) + "," + std::get<2>(key) + "," +
           std::get<3>(key) + "," + std::to_string(g.rows);
    for (int k = 0; k < 5; ++k) {
      if (g.metric[k].count == 0) {
        csv += ",,";
      } else {
        csv += "," + fmt("%.12g", g.metric[k].mean) + "," +
               fmt("%.12g", g.metric[k].se());
      }
    }
    csv += "\n";
  }
  return csv;
}

}  // namespace nctopo::experiment
