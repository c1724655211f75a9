// Topology formation and dissemination experiments for multi-source sensor
// networks: scenario generation, game-based formation, exhaustive baselines,
// SF/NC flow simulation, and CSV sweep pipelines.
#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "nctopo/baselines.hpp"
#include "nctopo/errors.hpp"
#include "nctopo/experiment.hpp"
#include "nctopo/flowsim.hpp"
#include "nctopo/formation.hpp"
#include "nctopo/geometry.hpp"

namespace {

using namespace nctopo;
using Exec = formation::Exec;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot read '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot write '" + path + "'");
  out << text;
}

void emit(const std::string& out_path, const std::string& text) {
  if (out_path.empty())
    std::cout << text;
  else
    write_file(out_path, text);
}

DestPolicy parse_policy(const std::string& name) {
  if (name == "shared") return DestPolicy::shared;
  if (name == "random") return DestPolicy::random;
  if (name == "edge_pair") return DestPolicy::edge_pair;
  throw ConfigError("unknown dest policy '" + name + "'");
}

Topology load_topology(const std::string& path) {
  const std::string text = read_file(path);
  try {
    return formation::formation_from_text(text).topology;
  } catch (const ConfigError&) {
  }
  try {
    return baselines::report_from_text(text).topology;
  } catch (const ConfigError&) {
  }
  throw ConfigError("'" + path + "' is neither a formation nor a baseline file");
}

int run(int argc, char** argv) {
  CLI::App app{"sensor network topology formation and flow experiments"};
  app.require_subcommand(1);

  // gen
  auto* gen = app.add_subcommand("gen", "generate a random scenario");
  ScenarioConfig sc;
  uint64_t gen_seed = 1;
  std::string gen_policy = "shared";
  std::string gen_out;
  gen->add_option("--n", sc.n_nodes, "node count")->required();
  gen->add_option("--seed", gen_seed, "scenario seed");
  gen->add_option("--radius", sc.radius, "cell radius");
  gen->add_option("--delta-factor", sc.delta, "connection boundary as a multiple of the radius")
      ->default_val(1.0);
  gen->add_option("--dest-count", sc.dest_count, "destinations per node");
  gen->add_option("--dest-policy", gen_policy, "shared | random | edge_pair");
  gen->add_option("--edge-frac", sc.edge_frac, "edge_pair radial placement");
  gen->add_option("--out", gen_out, "output path")->required();

  // form
  auto* form = app.add_subcommand("form", "form a topology by pairwise games");
  std::string form_scenario, form_out;
  double form_lambda = 0.0;
  bool form_serial = false;
  form->add_option("--scenario", form_scenario, "scenario file")->required();
  form->add_option("--lambda", form_lambda, "unit link cost")->required();
  form->add_option("--out", form_out, "output path");
  form->add_flag("--serial", form_serial, "single-worker run");

  // baseline
  auto* base = app.add_subcommand("baseline", "exhaustive centralized search");
  std::string base_scenario, base_out, base_strategy;
  double base_lambda = 0.0;
  bool base_serial = false;
  base->add_option("--scenario", base_scenario, "scenario file")->required();
  base->add_option("--lambda", base_lambda, "unit link cost")->required();
  base->add_option("--strategy", base_strategy,
                   "non-nc-centralized | nc-centralized")
      ->required();
  base->add_option("--out", base_out, "output path");
  base->add_flag("--serial", base_serial, "single-worker run");

  // simulate
  auto* sim = app.add_subcommand("simulate", "run SF/NC dissemination");
  std::string sim_scenario, sim_topology, sim_mode = "sf", sim_out;
  flowsim::SimConfig sim_cfg;
  sim->add_option("--scenario", sim_scenario, "scenario file")->required();
  sim->add_option("--topology", sim_topology, "formation or baseline file")
      ->required();
  sim->add_option("--mode", sim_mode, "sf | nc");
  sim->add_option("--slots", sim_cfg.slots, "horizon (0: four slots per node)")
      ->default_val(0);
  sim->add_option("--seed", sim_cfg.seed, "simulation seed");
  sim->add_option("--gf-m", sim_cfg.gf_m, "field GF(2^m) for NC");
  sim->add_option("--out", sim_out, "CSV output path (default stdout)");

  // sweep
  auto* sweep = app.add_subcommand("sweep", "experiment grid to CSV");
  std::string sweep_preset, sweep_config, sweep_out;
  uint64_t sweep_seed = 0;
  bool sweep_full = false, sweep_serial = false;
  sweep->add_option("--preset", sweep_preset,
                    "fig2 | fig4 | fig5 | fig6 | fig7 | fig8-desk");
  sweep->add_option("--config", sweep_config, "key = value config file");
  sweep->add_flag("--full", sweep_full, "raise replications to at least 1000");
  auto* sweep_seed_opt = sweep->add_option(
      "--seed", sweep_seed, "override the config/preset master seed");
  sweep->add_option("--out", sweep_out, "CSV output path (default stdout)");
  sweep->add_flag("--serial", sweep_serial, "single-worker run");

  // summarize
  auto* summ = app.add_subcommand("summarize", "grouped means of a sweep CSV");
  std::string summ_in, summ_out;
  summ->add_option("--in", summ_in, "sweep CSV path")->required();
  summ->add_option("--out", summ_out, "CSV output path (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  if (*gen) {
    sc.delta *= sc.radius;  // option carries the factor
    sc.dest_policy = parse_policy(gen_policy);
    const auto s = generate_scenario(sc, gen_seed);
    save_scenario(s, gen_out);
    std::cout << "scenario n = " << s.n_nodes << ", seed = " << gen_seed
              << " -> " << gen_out << "\n";
  } else if (*form) {
    const auto s = load_scenario(form_scenario);
    const auto f = formation::form_topology(
        s, form_lambda,
        form_serial ? formation::Exec::serial : formation::Exec::parallel);
    if (!form_out.empty()) formation::save_formation(f, form_out);
    std::cout << "formed " << count_active_links(f.topology) << " links, utility "
              << f.network_utility << ", profiles " << f.profiles_examined
              << "\n";
  } else if (*base) {
    const auto s = load_scenario(base_scenario);
    if (base_strategy != "non-nc-centralized" &&
        base_strategy != "nc-centralized")
      throw ConfigError("unknown strategy '" + base_strategy + "'");
    const auto exec = base_serial ? Exec::serial : Exec::parallel;
    const auto r = base_strategy == "non-nc-centralized"
                       ? baselines::non_nc_centralized(s, base_lambda, exec)
                       : baselines::nc_centralized(s, base_lambda, exec);
    if (!base_out.empty()) baselines::save_report(r, base_out);
    std::cout << r.strategy_name << ": " << count_active_links(r.topology)
              << " links, utility " << r.network_utility << ", profiles "
              << r.profiles_examined << "\n";
  } else if (*sim) {
    const auto s = load_scenario(sim_scenario);
    const auto topo = load_topology(sim_topology);
    if (sim_mode == "sf") sim_cfg.mode = flowsim::Mode::sf;
    else if (sim_mode == "nc") sim_cfg.mode = flowsim::Mode::nc;
    else throw ConfigError("unknown mode '" + sim_mode + "'");
    if (sim_cfg.slots == 0) sim_cfg.slots = 4 * s.n_nodes;
    const auto r = flowsim::simulate(s, topo, sim_cfg);
    std::ostringstream csv;
    csv << "mode,slots,seed,active_links,failure_ratio,delivered,goodput,"
           "per_node_goodput\n"
        << sim_mode << "," << sim_cfg.slots << "," << sim_cfg.seed << ","
        << r.active_links << "," << r.connection_failure_ratio << ","
        << r.delivered.size() << "," << r.goodput << ","
        << r.per_node_goodput << "\n";
    emit(sim_out, csv.str());
  } else if (*sweep) {
    if (sweep_preset.empty() == sweep_config.empty())
      throw ConfigError("sweep needs exactly one of --preset or --config");
    auto cfg = sweep_preset.empty()
                   ? experiment::parse_config(read_file(sweep_config))
                   : experiment::preset(sweep_preset, sweep_full);
    if (sweep_full) cfg.replications = std::max(cfg.replications, 1000);
    if (sweep_seed_opt->count() > 0) cfg.seed = sweep_seed;
    const auto exec = sweep_serial ? Exec::serial : Exec::parallel;
    if (cfg.location_study) {
      emit(sweep_out, experiment::run_location_study(cfg, exec));
    } else {
      const auto csv = experiment::run_sweep(cfg, exec);
      emit(sweep_out, csv);
      if (sweep_preset == "fig4" || sweep_preset == "fig5") {
        const auto check = experiment::check_trends(csv);
        if (!check.ok) {
          std::cerr << "trend violation: " << check.message << "\n";
          return 2;
        }
      }
    }
  } else if (*summ) {
    emit(summ_out, experiment::summarize(read_file(summ_in)));
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const SizeGuardError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
