#include "nctopo/experiment.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <sstream>
#include <string>
#include <vector>

#include "nctopo/errors.hpp"
#include "nctopo/formation.hpp"

namespace nctopo::experiment {
namespace {

std::vector<std::string> lines_of(const std::string& csv) {
  std::vector<std::string> out;
  std::istringstream in(csv);
  std::string line;
  while (std::getline(in, line)) out.push_back(line);
  return out;
}

std::vector<std::string> fields_of(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : line) {
    if (c == ',') {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

// Everything but the wall_ms column, which is excluded from determinism.
std::string strip_wall(const std::string& csv) {
  std::string out;
  for (const auto& line : lines_of(csv)) {
    const auto pos = line.rfind(',');
    out += line.substr(0, pos);
    out += '\n';
  }
  return out;
}

TEST(Experiment, ParseConfigReadsEveryKey) {
  const std::string text =
      "# full sweep description\n"
      "n_nodes = 10, 20\n"
      "lambda = 0:0.5:1\n"
      "replications = 7\n"
      "seed = 42\n"
      "dest_count = 2\n"
      "dest_policy = random\n"
      "radius = 8\n"
      "delta_factor = 1.1\n"
      "edge_frac = 0.9\n"
      "strategies = proposed, nc-centralized\n"
      "modes = sf, nc\n"
      "slots = 12\n"
      "gf_m = 4\n"
      "study = sweep\n";
  const auto c = parse_config(text);
  EXPECT_EQ(c.n_nodes, (std::vector<int>{10, 20}));
  ASSERT_EQ(c.lambdas.size(), 3u);
  EXPECT_DOUBLE_EQ(c.lambdas[0], 0.0);
  EXPECT_DOUBLE_EQ(c.lambdas[1], 0.5);
  EXPECT_DOUBLE_EQ(c.lambdas[2], 1.0);
  EXPECT_EQ(c.replications, 7);
  EXPECT_EQ(c.seed, 42u);
  EXPECT_EQ(c.dest_policy, DestPolicy::random);
  EXPECT_DOUBLE_EQ(c.radius, 8.0);
  EXPECT_DOUBLE_EQ(c.delta_factor, 1.1);
  EXPECT_DOUBLE_EQ(c.edge_frac, 0.9);
  ASSERT_EQ(c.strategies.size(), 2u);
  EXPECT_EQ(c.strategies[0], Strategy::proposed);
  EXPECT_EQ(c.strategies[1], Strategy::nc_centralized);
  ASSERT_EQ(c.modes.size(), 2u);
  EXPECT_EQ(c.modes[0], flowsim::Mode::sf);
  EXPECT_EQ(c.modes[1], flowsim::Mode::nc);
  EXPECT_EQ(c.slots, 12);
  EXPECT_EQ(c.gf_m, 4);
  EXPECT_FALSE(c.location_study);
}

TEST(Experiment, ParseConfigDefaults) {
  const auto c = parse_config("n_nodes = 5\nlambda = 0.3\n");
  EXPECT_EQ(c.replications, 200);
  EXPECT_EQ(c.dest_count, 2);
  EXPECT_EQ(c.dest_policy, DestPolicy::shared);
  ASSERT_EQ(c.strategies.size(), 1u);
  EXPECT_EQ(c.strategies[0], Strategy::proposed);
  EXPECT_TRUE(c.modes.empty());
  EXPECT_EQ(c.slots, 0);
}

TEST(Experiment, ParseConfigReportsLineNumbers) {
  const auto expect_line = [](const std::string& text, const char* what) {
    try {
      parse_config(text);
      FAIL() << "expected ConfigError for: " << text;
    } catch (const ConfigError& e) {
      EXPECT_NE(std::string(e.what()).find(what), std::string::npos)
          << e.what();
    }
  };
  expect_line("n_nodes = 5\nbogus = 1\n", "line 2: unknown key 'bogus'");
  expect_line("n_nodes = x\n", "line 1: bad integer 'x'");
  expect_line("n_nodes = 5\nlambda = 0.1\nlambda = 0.2\n",
              "line 3: duplicate key lambda");
  expect_line("n_nodes = 5\nlambda =\n", "line 2: empty value");
  expect_line("n_nodes = 5\nlambda 0.1\n", "line 2: expected key = value");
  expect_line("n_nodes = 5\nlambda = 0.1\nmodes = none, sf\n",
              "line 3: mode none excludes");
  expect_line("n_nodes = 5\nlambda = 0.1\nstrategies = tcle\n",
              "line 3: unknown strategy 'tcle'");
  EXPECT_THROW(parse_config("n_nodes = 5\nlambda = 1.5\n"), ConfigError);
  EXPECT_THROW(parse_config("n_nodes = 5\nlambda = 0.1\ndest_count = 5\n"),
               ConfigError);
  EXPECT_THROW(
      parse_config("n_nodes = 5\nlambda = 0.1\ndest_policy = edge_pair\n"
                    "dest_count = 1\n"),
      ConfigError);
}

TEST(Experiment, PresetsPinTheNamedPipelines) {
  const auto fig4 = preset("fig4");
  EXPECT_EQ(fig4.n_nodes, (std::vector<int>{30, 50}));
  ASSERT_EQ(fig4.lambdas.size(), 11u);
  EXPECT_DOUBLE_EQ(fig4.lambdas.front(), 0.0);
  EXPECT_EQ(fig4.lambdas.back(), 1.0);  // exact: the Λ = 1 row must be exact
  EXPECT_EQ(fig4.replications, 200);
  EXPECT_TRUE(fig4.modes.empty());
  EXPECT_DOUBLE_EQ(fig4.delta_factor, 1.0);
  EXPECT_EQ(preset("fig4", true).replications, 1000);
  EXPECT_EQ(strip_wall(run_sweep(preset("fig5"), Exec::serial)).substr(0, 1),
            "n");  // fig5 shares the fig4 dataset shape

  const auto fig2 = preset("fig2");
  EXPECT_TRUE(fig2.location_study);
  EXPECT_EQ(fig2.dest_policy, DestPolicy::edge_pair);
  EXPECT_EQ(fig2.n_nodes, (std::vector<int>{50}));

  const auto fig6 = preset("fig6");
  EXPECT_DOUBLE_EQ(fig6.delta_factor, 1.1);
  ASSERT_EQ(fig6.modes.size(), 2u);

  const auto fig7 = preset("fig7");
  EXPECT_EQ(fig7.n_nodes, (std::vector<int>{10, 20, 30, 40, 50}));
  ASSERT_EQ(fig7.lambdas.size(), 1u);
  EXPECT_DOUBLE_EQ(fig7.lambdas[0], 0.1);

  const auto fig8 = preset("fig8-desk");
  EXPECT_EQ(fig8.n_nodes, (std::vector<int>{5}));
  ASSERT_EQ(fig8.strategies.size(), 3u);

  EXPECT_THROW(preset("fig3"), ConfigError);
}

ExperimentConfig tiny_config() {
  ExperimentConfig c;
  c.n_nodes = {5};
  c.lambdas = {0.0, 0.5, 1.0};
  c.replications = 3;
  c.seed = 9;
  return c;
}

TEST(Experiment, SweepRowsFollowTheGridOrder) {
  const auto csv = run_sweep(tiny_config(), Exec::serial);
  const auto lines = lines_of(csv);
  ASSERT_EQ(lines.size(), 1u + 3u * 3u);
  EXPECT_EQ(lines[0],
            "n,lambda,rep,strategy,mode,active_links,failure_ratio,utility,"
            "goodput,per_node_goodput,profiles_examined,wall_ms");
  // grid order: lambda-major over reps
  EXPECT_EQ(fields_of(lines[1])[1], "0");
  EXPECT_EQ(fields_of(lines[1])[2], "0");
  EXPECT_EQ(fields_of(lines[2])[2], "1");
  EXPECT_EQ(fields_of(lines[4])[1], "0.5");
  for (size_t i = 1; i < lines.size(); ++i) {
    const auto f = fields_of(lines[i]);
    ASSERT_EQ(f.size(), 12u);
    EXPECT_EQ(f[0], "5");
    EXPECT_EQ(f[3], "proposed");
    EXPECT_EQ(f[4], "none");
    EXPECT_TRUE(f[8].empty());  // goodput not simulated
    EXPECT_TRUE(f[9].empty());
    EXPECT_EQ(f[10], "80");  // C(5,2) pair games, 2 destinations, 4 profiles
  }
  // full unit cost: no links, every flow fails, utility exactly zero
  for (size_t i = 7; i < 10; ++i) {
    const auto f = fields_of(lines[i]);
    EXPECT_EQ(f[1], "1");
    EXPECT_EQ(f[5], "0");
    EXPECT_EQ(f[6], "1");
    EXPECT_EQ(f[7], "0");
  }
}

TEST(Experiment, SweepIsDeterministicModuloWallTime) {
  const auto a = run_sweep(tiny_config(), Exec::serial);
  const auto b = run_sweep(tiny_config(), Exec::serial);
  const auto c = run_sweep(tiny_config(), Exec::parallel);
  EXPECT_EQ(strip_wall(a), strip_wall(b));
  EXPECT_EQ(strip_wall(a), strip_wall(c));
}

TEST(Experiment, SweepSimulationRowsCarryGoodput) {
  auto cfg = tiny_config();
  cfg.lambdas = {0.1};
  cfg.replications = 2;
  cfg.modes = {flowsim::Mode::sf, flowsim::Mode::nc};
  const auto lines = lines_of(run_sweep(cfg, Exec::serial));
  ASSERT_EQ(lines.size(), 1u + 2u * 2u);
  for (size_t i = 1; i < lines.size(); i += 2) {
    const auto sf = fields_of(lines[i]);
    const auto nc = fields_of(lines[i + 1]);
    EXPECT_EQ(sf[4], "sf");
    EXPECT_EQ(nc[4], "nc");
    EXPECT_FALSE(sf[8].empty());
    EXPECT_FALSE(nc[8].empty());
    // same cell, same strategy: topology metrics agree across modes
    EXPECT_EQ(sf[5], nc[5]);
    EXPECT_EQ(sf[6], nc[6]);
    EXPECT_EQ(sf[7], nc[7]);
    const double goodput = std::stod(nc[8]);
    EXPECT_DOUBLE_EQ(std::stod(nc[9]), goodput / 5.0);
  }
}

TEST(Experiment, SweepRefusesOversizedBaselines) {
  auto cfg = tiny_config();
  cfg.n_nodes = {6};
  cfg.strategies = {Strategy::nc_centralized};
  EXPECT_THROW(run_sweep(cfg, Exec::serial), SizeGuardError);
  cfg.n_nodes = {8};
  cfg.strategies = {Strategy::non_nc_centralized};
  EXPECT_THROW(run_sweep(cfg, Exec::serial), SizeGuardError);
}

TEST(Experiment, TrendCheckAcceptsAMonotoneSweep) {
  ExperimentConfig cfg;
  cfg.n_nodes = {12};
  cfg.lambdas = {0.0, 0.2, 0.4, 0.6, 0.8, 1.0};
  cfg.replications = 30;
  cfg.seed = 4;
  const auto csv = run_sweep(cfg, Exec::serial);
  const auto check = check_trends(csv);
  EXPECT_TRUE(check.ok) << check.message;
}

std::string synthetic_rows(bool active_up, bool fail_down) {
  std::string csv =
      "n,lambda,rep,strategy,mode,active_links,failure_ratio,utility,goodput,"
      "per_node_goodput,profiles_examined,wall_ms\n";
  const std::string a1 = active_up ? "14" : "6";
  const std::string f1 = fail_down ? "0.2" : "0.6";
  for (int rep = 0; rep < 40; ++rep) {
    csv += "8,0.1," + std::to_string(rep) + ",proposed,none,10,0.4,1,,,112,0.1\n";
    csv += "8,0.2," + std::to_string(rep) + ",proposed,none," + a1 + "," + f1 +
           ",1,,,112,0.1\n";
  }
  return csv;
}

TEST(Experiment, TrendCheckFlagsViolations) {
  const auto up = check_trends(synthetic_rows(true, false));
  EXPECT_FALSE(up.ok);
  EXPECT_NE(up.message.find("active links increase"), std::string::npos)
      << up.message;
  const auto down = check_trends(synthetic_rows(false, true));
  EXPECT_FALSE(down.ok);
  EXPECT_NE(down.message.find("failure ratio decreases"), std::string::npos)
      << down.message;
  EXPECT_TRUE(check_trends(synthetic_rows(false, false)).ok);
}

TEST(Experiment, SummarizeComputesGroupedMeanAndStandardError) {
  const std::string csv =
      "n,lambda,rep,strategy,mode,active_links,failure_ratio,utility,goodput,"
      "per_node_goodput,profiles_examined,wall_ms\n"
      "5,0.3,0,proposed,none,4,0.5,1,,,80,0.1\n"
      "5,0.3,1,proposed,none,6,0.5,2,,,80,0.1\n"
      "5,0.3,2,proposed,none,8,0.5,3,,,80,0.1\n"
      "5,0.1,0,proposed,sf,2,0,4,0.5,0.1,80,0.1\n";
  const auto lines = lines_of(summarize(csv));
  ASSERT_EQ(lines.size(), 3u);
  EXPECT_EQ(lines[0],
            "n,lambda,strategy,mode,rows,active_links_mean,active_links_se,"
            "failure_ratio_mean,failure_ratio_se,utility_mean,utility_se,"
            "goodput_mean,goodput_se,per_node_goodput_mean,per_node_goodput_se");
  // groups sort by (n, lambda, strategy, mode): 0.1 first
  const auto g1 = fields_of(lines[1]);
  EXPECT_EQ(g1[1], "0.1");
  EXPECT_EQ(g1[3], "sf");
  EXPECT_EQ(g1[4], "1");
  EXPECT_EQ(g1[11], "0.5");  // goodput mean of a single row
  EXPECT_EQ(g1[12], "0");    // single sample: no spread
  const auto g2 = fields_of(lines[2]);
  EXPECT_EQ(g2[1], "0.3");
  EXPECT_EQ(g2[4], "3");
  EXPECT_DOUBLE_EQ(std::stod(g2[5]), 6.0);  // mean active links
  EXPECT_NEAR(std::stod(g2[6]), 2.0 / std::sqrt(3.0), 1e-9);
  EXPECT_EQ(g2[8], "0");  // constant failure column: se exactly 0
  EXPECT_DOUBLE_EQ(std::stod(g2[9]), 2.0);
  EXPECT_TRUE(g2[11].empty());  // goodput never simulated in this group
  EXPECT_TRUE(g2[12].empty());
}

TEST(Experiment, SummarizeHandlesEmptyInput) {
  const auto empty = summarize("");
  EXPECT_EQ(lines_of(empty).size(), 1u);
  const auto header_only = summarize(
      "n,lambda,rep,strategy,mode,active_links,failure_ratio,utility,goodput,"
      "per_node_goodput,profiles_examined,wall_ms\n");
  EXPECT_EQ(empty, header_only);
}

TEST(Experiment, SummarizeReportsMalformedRows) {
  const std::string head =
      "n,lambda,rep,strategy,mode,active_links,failure_ratio,utility,goodput,"
      "per_node_goodput,profiles_examined,wall_ms\n";
  try {
    summarize(head + "5,0.3,0,proposed,none,4,0.5,1,,,80,0.1\n5,0.3\n");
    FAIL() << "expected ConfigError";
  } catch (const ConfigError& e) {
    EXPECT_NE(std::string(e.what()).find("row 3"), std::string::npos)
        << e.what();
  }
  try {
    summarize(head + "5,0.3,0,proposed,none,oops,0.5,1,,,80,0.1\n");
    FAIL() << "expected ConfigError";
  } catch (const ConfigError& e) {
    const std::string msg = e.what();
    EXPECT_NE(msg.find("row 2"), std::string::npos) << msg;
    EXPECT_NE(msg.find("active_links"), std::string::npos) << msg;
  }
}

TEST(Experiment, LocationStudyRequiresEdgePairPolicy) {
  auto cfg = tiny_config();
  EXPECT_THROW(run_location_study(cfg, Exec::serial), ConfigError);
}

TEST(Experiment, LocationStudyEmitsTertilesPerReplication) {
  ExperimentConfig cfg;
  cfg.n_nodes = {9};
  cfg.lambdas = {0.3};
  cfg.replications = 2;
  cfg.seed = 3;
  cfg.dest_policy = DestPolicy::edge_pair;
  const auto csv = run_location_study(cfg, Exec::serial);
  EXPECT_EQ(csv, run_location_study(cfg, Exec::parallel));
  const auto lines = lines_of(csv);
  ASSERT_EQ(lines.size(), 1u + 2u * 3u);
  EXPECT_EQ(lines[0], "n,rep,node_class,mean_out_links,nodes");
  int sizes = 0;
  for (size_t i = 1; i <= 3; ++i) {
    const auto f = fields_of(lines[i]);
    EXPECT_EQ(f[0], "9");
    EXPECT_EQ(f[1], "0");
    sizes += std::stoi(f[4]);
  }
  EXPECT_EQ(sizes, 7);  // nine nodes minus the two destinations
  EXPECT_EQ(fields_of(lines[1])[2], "NEAR");
  EXPECT_EQ(fields_of(lines[2])[2], "MID");
  EXPECT_EQ(fields_of(lines[3])[2], "FAR");
}

TEST(Experiment, EquidistantRingPutsEveryClassLevel) {
  // 12 nodes on a circle around the shared destination pair at the center:
  // rotational symmetry forces identical out-degrees, so the class means
  // must coincide no matter how the tie-broken tertiles split.
  Scenario s;
  s.n_nodes = 14;
  s.radius = 10.0;
  s.delta = 100.0;
  s.positions.resize(14);
  const double pi = std::acos(-1.0);
  for (int k = 0; k < 12; ++k)
    s.positions[k] = {5.0 * std::cos(2 * pi * k / 12.0),
                      5.0 * std::sin(2 * pi * k / 12.0)};
  s.positions[12] = {0.0, 0.0};
  s.positions[13] = {0.0, 0.0};
  s.destinations.assign(14, {13, 14});
  s.destinations[12] = {14};
  s.destinations[13] = {13};
  const auto f = formation::form_topology(s, 0.3, formation::Exec::serial);
  const auto classes = classify_by_distance(s, f.topology);
  ASSERT_EQ(classes.size(), 3u);
  EXPECT_EQ(classes[0].nodes, 4);
  EXPECT_DOUBLE_EQ(classes[0].mean_out_links, classes[1].mean_out_links);
  EXPECT_DOUBLE_EQ(classes[1].mean_out_links, classes[2].mean_out_links);
}

}  // namespace
}  // namespace nctopo::experiment
