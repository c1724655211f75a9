// Times the OpenMP kernels against their serial reference implementations
// and verifies both produce identical results.
#include <chrono>
#include <cstdio>
#include <string>

#include <omp.h>

#include "nctopo/baselines.hpp"
#include "nctopo/experiment.hpp"
#include "nctopo/formation.hpp"
#include "nctopo/geometry.hpp"

namespace {

using namespace nctopo;
using Exec = formation::Exec;

double time_ms(const auto& fn) {
  const auto t0 = std::chrono::steady_clock::now();
  fn();
  return std::chrono::duration<double, std::milli>(
             std::chrono::steady_clock::now() - t0)
      .count();
}

void report(const std::string& name, double serial_ms, double parallel_ms,
            bool identical) {
  std::printf("%-28s %10.1f ms %10.1f ms %7.2fx  %s\n", name.c_str(),
              serial_ms, parallel_ms, serial_ms / parallel_ms,
              identical ? "identical" : "MISMATCH");
}

}  // namespace

int main() {
  std::printf("threads: %d\n", omp_get_max_threads());
  std::printf("%-28s %13s %13s %8s\n", "kernel", "serial", "parallel",
              "speedup");

  {
    ScenarioConfig cfg;
    cfg.n_nodes = 200;
    const auto s = generate_scenario(cfg, 1);
    formation::FormationResult a, b;
    const double ts = time_ms([&] { a = form_topology(s, 0.3, Exec::serial); });
    const double tp = time_ms([&] { b = form_topology(s, 0.3, Exec::parallel); });
    report("formation n=200", ts, tp,
           a.per_pair_profiles == b.per_pair_profiles &&
               a.network_utility == b.network_utility);
  }
  {
    ScenarioConfig cfg;
    cfg.n_nodes = 7;
    const auto s = generate_scenario(cfg, 2);
    baselines::StrategyReport a, b;
    const double ts =
        time_ms([&] { a = baselines::non_nc_centralized(s, 0.3, Exec::serial); });
    const double tp = time_ms(
        [&] { b = baselines::non_nc_centralized(s, 0.3, Exec::parallel); });
    report("non-nc exhaustive n=7", ts, tp,
           a.topology.active_links == b.topology.active_links &&
               a.network_utility == b.network_utility);
  }
  {
    ScenarioConfig cfg;
    cfg.n_nodes = 5;
    const auto s = generate_scenario(cfg, 3);
    baselines::StrategyReport a, b;
    const double ts =
        time_ms([&] { a = baselines::nc_centralized(s, 0.3, Exec::serial); });
    const double tp =
        time_ms([&] { b = baselines::nc_centralized(s, 0.3, Exec::parallel); });
    report("nc exhaustive n=5", ts, tp,
           a.topology.active_links == b.topology.active_links &&
               a.network_utility == b.network_utility);
  }
  {
    experiment::ExperimentConfig cfg;
    cfg.n_nodes = {20};
    cfg.lambdas = {0.1, 0.3, 0.5};
    cfg.replications = 20;
    cfg.seed = 4;
    std::string a, b;
    const double ts = time_ms([&] { a = run_sweep(cfg, Exec::serial); });
    const double tp = time_ms([&] { b = run_sweep(cfg, Exec::parallel); });
    const auto strip = [](const std::string& csv) {
      std::string out;
      size_t start = 0;
      while (start < csv.size()) {
        size_t end = csv.find('\n', start);
        if (end == std::string::npos) end = csv.size();
        const std::string line = csv.substr(start, end - start);
        out += line.substr(0, line.rfind(','));
        out += '\n';
        start = end + 1;
      }
      return out;
    };
    report("sweep 20x3x20 cells", ts, tp, strip(a) == strip(b));
  }
  return 0;
}
