// Benchmark: the simplex elimination kernels, serial reference vs OpenMP,
// measured through full epigraph-LP solves of growing horizon length. The
// two paths must agree bit-for-bit on the returned point.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <string>
#include <vector>

#if defined(_OPENMP)
#include <omp.h>
#endif

#include <CLI11.hpp>

#include "nemarb/arbitrage.hpp"
#include "nemarb/core.hpp"
#include "nemarb/lp.hpp"
#include "nemarb/synth.hpp"

namespace {

using namespace nemarb;

Scenario make_scenario(std::size_t n_steps) {
  synth::SynthConfig gen;
  gen.n_steps = n_steps;
  gen.seed = 99;
  const synth::SynthData data = synth::generate(gen);

  BatteryParams battery;
  battery.b_min_wh = 200.0;
  battery.b_max_wh = 2000.0;
  battery.b0_wh = 1000.0;
  battery.eta_ch = 0.95;
  battery.eta_dis = 0.95;
  battery.delta_min_w = -1000.0;
  battery.delta_max_w = 1000.0;

  return Scenario(TimeGrid::uniform(n_steps, 1.0),
                  PriceSeries::from_kappa(data.price_buy, 0.5), NetLoadSeries(data.z_wh),
                  battery);
}

double median_ms(std::vector<double>& samples) {
  std::sort(samples.begin(), samples.end());
  return samples[samples.size() / 2];
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"simplex kernel benchmark: serial reference vs OpenMP"};
  std::vector<std::size_t> sizes{24, 48, 96, 192};
  int reps = 3;
  app.add_option("--sizes", sizes, "horizon lengths to benchmark")->delimiter(',');
  app.add_option("--reps", reps, "repetitions per size (median reported)");
  CLI11_PARSE(app, argc, argv);

#if defined(_OPENMP)
  std::printf("OpenMP enabled, max threads = %d\n", omp_get_max_threads());
#else
  std::printf("built without OpenMP; parallel path runs serially\n");
#endif
  std::printf("%6s %8s %8s %12s %14s %9s %8s %10s\n", "N", "rows", "vars", "serial_ms",
              "parallel_ms", "speedup", "pivots", "identical");

  for (std::size_t n : sizes) {
    const Scenario scenario = make_scenario(n);
    const lp::LinearProgram prog = build_epigraph_lp(scenario);

    lp::SimplexOptions serial;
    serial.policy = lp::ExecPolicy::Serial;
    lp::SimplexOptions parallel;
    parallel.policy = lp::ExecPolicy::Parallel;

    lp::LpSolution serial_solution, parallel_solution;
    std::vector<double> serial_ms, parallel_ms;
    for (int r = 0; r < reps; ++r) {
      auto t0 = std::chrono::steady_clock::now();
      serial_solution = lp::solve(prog, serial);
      auto t1 = std::chrono::steady_clock::now();
      parallel_solution = lp::solve(prog, parallel);
      auto t2 = std::chrono::steady_clock::now();
      serial_ms.push_back(std::chrono::duration<double, std::milli>(t1 - t0).count());
      parallel_ms.push_back(std::chrono::duration<double, std::milli>(t2 - t1).count());
    }

    const bool identical = serial_solution.status == parallel_solution.status &&
                           serial_solution.x == parallel_solution.x &&
                           serial_solution.objective == parallel_solution.objective;
    const double s = median_ms(serial_ms);
    const double p = median_ms(parallel_ms);
    std::printf("%6zu %8zu %8zu %12.2f %14.2f %9.2f %8d %10s\n", n, prog.num_rows(),
                prog.num_vars(), s, p, s / p, serial_solution.iterations,
                identical ? "yes" : "NO");
    if (!identical) return 1;
  }
  return 0;
}
