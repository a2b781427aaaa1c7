#pragma once

#include "nemarb/core.hpp"
#include "nemarb/costmodel.hpp"
#include "nemarb/lp.hpp"

// Assembles the epigraph LP for the arbitrage problem, solves it, and
// extracts dispatch, trajectory and gains. Variables are ordered
// [x_1..x_N, t_1..t_N]; rows are the 4N segment rows (step-major) followed
// by 2N cumulative capacity rows (upper then lower, per step).

namespace nemarb {

struct ArbitrageSolution {
  std::vector<double> x_star;  // Wh change in stored energy per step
  std::vector<double> b_star;  // Wh stored after each step
  std::vector<double> s_star;  // Wh drawn from the meter per step
  double objective = 0.0;      // optimal cost, cents
  double baseline_cost = 0.0;  // cost of x == 0, cents
  double gains = 0.0;          // baseline - objective, cents
  int lp_iterations = 0;
};

/// The P_LP matrices for a scenario. Throws on violated price precondition.
lp::LinearProgram build_epigraph_lp(const Scenario& scenario);

/// Cost of a given dispatch evaluated step by step with cost_nm.
double dispatch_cost(const Scenario& scenario, const std::vector<double>& x);

/// Cost of doing nothing (x == 0).
double baseline_cost(const Scenario& scenario);

/// Optimal dispatch via the epigraph LP.
ArbitrageSolution solve_arbitrage(const Scenario& scenario,
                                  const lp::SimplexOptions& options = {});

/// Exhaustive grid search oracle. Requires N <= 5 and at most ~200 grid
/// points per step; optimal within (max slope) * resolution * N.
ArbitrageSolution brute_force_arbitrage(const Scenario& scenario, double resolution_wh);

}  // namespace nemarb
