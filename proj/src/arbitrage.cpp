#include "nemarb/arbitrage.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace nemarb {

lp::LinearProgram build_epigraph_lp(const Scenario& scenario) {
  const std::size_t n = scenario.size();
  lp::LinearProgram prog = lp::LinearProgram::with_dims(6 * n, 2 * n);

  for (std::size_t i = 0; i < n; ++i) {
    prog.c[n + i] = 1.0;  // minimize sum of epigraph variables

    const SegmentSet set = build_segments(scenario.netload.z[i], scenario.prices.buy[i],
                                          scenario.prices.sell[i], scenario.battery);
    for (std::size_t k = 0; k < 4; ++k) {
      const std::size_t row = 4 * i + k;
      prog.at(row, i) = set.segments[k].slope;
      prog.at(row, n + i) = -1.0;
      prog.b[row] = -set.segments[k].y_intercept;
    }

    // Cumulative capacity window: b_min - b0 <= sum_{j<=i} x_j <= b_max - b0.
    const std::size_t up = 4 * n + 2 * i;
    const std::size_t dn = up + 1;
    for (std::size_t j = 0; j <= i; ++j) {
      prog.at(up, j) = 1.0;
      prog.at(dn, j) = -1.0;
    }
    prog.b[up] = scenario.battery.b_max_wh - scenario.battery.b0_wh;
    prog.b[dn] = scenario.battery.b0_wh - scenario.battery.b_min_wh;

    const auto [x_min, x_max] = ramp_energy_bounds(scenario.battery, scenario.grid, i);
    prog.lower[i] = x_min;
    prog.upper[i] = x_max;
    // t_i stays free
  }
  return prog;
}

double dispatch_cost(const Scenario& scenario, const std::vector<double>& x) {
  if (x.size() != scenario.size())
    throw std::invalid_argument("dispatch_cost: dispatch length mismatch");
  double total = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i)
    total += cost_nm(x[i], scenario.netload.z[i], scenario.prices.buy[i],
                     scenario.prices.sell[i], scenario.battery);
  return total;
}

double baseline_cost(const Scenario& scenario) {
  return dispatch_cost(scenario, std::vector<double>(scenario.size(), 0.0));
}

namespace {

ArbitrageSolution finish_solution(const Scenario& scenario, std::vector<double> x,
                                  double objective, int iterations) {
  ArbitrageSolution sol;
  sol.x_star = std::move(x);
  sol.b_star.resize(sol.x_star.size());
  sol.s_star.resize(sol.x_star.size());
  double level = scenario.battery.b0_wh;
  for (std::size_t i = 0; i < sol.x_star.size(); ++i) {
    level += sol.x_star[i];
    sol.b_star[i] = level;
    sol.s_star[i] = storage_energy(sol.x_star[i], scenario.battery);
  }
  sol.objective = objective;
  sol.baseline_cost = baseline_cost(scenario);
  sol.gains = sol.baseline_cost - sol.objective;
  sol.lp_iterations = iterations;
  return sol;
}

}  // namespace

ArbitrageSolution solve_arbitrage(const Scenario& scenario, const lp::SimplexOptions& options) {
  const lp::LinearProgram prog = build_epigraph_lp(scenario);
  const lp::LpSolution lp_sol = lp::solve(prog, options);
  if (lp_sol.status != lp::LpStatus::Optimal)
    // x == 0 is always feasible for a valid scenario, so this is a solver bug.
    throw std::runtime_error("solve_arbitrage: LP did not reach an optimum");
  const std::size_t n = scenario.size();
  std::vector<double> x(lp_sol.x.begin(), lp_sol.x.begin() + static_cast<std::ptrdiff_t>(n));
  ArbitrageSolution sol =
      finish_solution(scenario, std::move(x), lp_sol.objective, lp_sol.iterations);
  // When the optimum cannot beat doing nothing the zero dispatch is itself
  // optimal; return it so gains and cycle counts are exactly zero instead of
  // an arbitrary vertex of the zero-gain face (e.g. kappa = 0 with z == 0).
  if (sol.gains <= options.feas_tol * (1.0 + std::abs(sol.baseline_cost)))
    return finish_solution(scenario, std::vector<double>(n, 0.0), sol.baseline_cost,
                           lp_sol.iterations);
  return sol;
}

ArbitrageSolution brute_force_arbitrage(const Scenario& scenario, double resolution_wh) {
  const std::size_t n = scenario.size();
  if (n > 5) throw std::invalid_argument("brute_force_arbitrage: instance too large (N > 5)");
  if (!(resolution_wh > 0.0))
    throw std::invalid_argument("brute_force_arbitrage: resolution must be > 0");
  double combinations = 1.0;
  for (std::size_t i = 0; i < n; ++i) {
    const auto [x_min, x_max] = ramp_energy_bounds(scenario.battery, scenario.grid, i);
    combinations *= std::floor((x_max - x_min) / resolution_wh) + 3.0;
    if (combinations > 2e6)
      throw std::invalid_argument("brute_force_arbitrage: instance too large (grid explosion)");
  }

  const double cap_lo = scenario.battery.b_min_wh - scenario.battery.b0_wh;
  const double cap_hi = scenario.battery.b_max_wh - scenario.battery.b0_wh;

  std::vector<double> current(n, 0.0);
  std::vector<double> best_x(n, 0.0);
  double best_cost = baseline_cost(scenario);  // x == 0 is always a candidate

  // Depth-first scan over the per-step grid, pruning by the cumulative
  // capacity window. Grid points are anchored at zero; the exact window
  // edges are always included as candidates.
  auto recurse = [&](auto&& self, std::size_t i, double prefix_sum, double cost_so_far) -> void {
    if (i == n) {
      if (cost_so_far < best_cost) {
        best_cost = cost_so_far;
        best_x = current;
      }
      return;
    }
    const auto [ramp_lo, ramp_hi] = ramp_energy_bounds(scenario.battery, scenario.grid, i);
    const double lo = std::max(ramp_lo, cap_lo - prefix_sum);
    const double hi = std::min(ramp_hi, cap_hi - prefix_sum);
    if (lo > hi) return;  // cannot happen while 0 stays inside the window

    auto visit = [&](double xi) {
      current[i] = xi;
      const double c = cost_nm(xi, scenario.netload.z[i], scenario.prices.buy[i],
                               scenario.prices.sell[i], scenario.battery);
      self(self, i + 1, prefix_sum + xi, cost_so_far + c);
    };
    visit(lo);
    const double first = std::ceil(lo / resolution_wh) * resolution_wh;
    for (double xi = first; xi < hi; xi += resolution_wh)
      if (xi > lo) visit(xi);
    if (hi > lo) visit(hi);
  };
  recurse(recurse, 0, 0.0, 0.0);

  return finish_solution(scenario, std::move(best_x), best_cost, 0);
}

}  // namespace nemarb
