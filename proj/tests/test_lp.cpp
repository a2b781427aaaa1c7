#include <doctest.h>

#include <cmath>
#include <random>
#include <sstream>

#include "nemarb/lp.hpp"
#include "nemarb/lp_oracle.hpp"

using namespace nemarb::lp;

namespace {

// Random box-bounded instance; roughly a quarter come out infeasible.
LinearProgram random_lp(std::mt19937_64& rng) {
  std::uniform_int_distribution<std::size_t> draw_n(1, 4);
  std::uniform_int_distribution<std::size_t> draw_m(1, 6);
  std::uniform_real_distribution<double> coef(-3.0, 3.0);
  std::uniform_real_distribution<double> half(0.2, 4.0);
  const std::size_t n = draw_n(rng);
  const std::size_t m = draw_m(rng);
  LinearProgram lp = LinearProgram::with_dims(m, n);
  std::vector<double> center(n);
  for (std::size_t j = 0; j < n; ++j) {
    lp.c[j] = coef(rng);
    center[j] = coef(rng);
    const double h = half(rng);
    lp.lower[j] = center[j] - h;
    lp.upper[j] = center[j] + h;
  }
  std::uniform_real_distribution<double> slack(-2.0, 6.0);
  for (std::size_t r = 0; r < m; ++r) {
    double at_center = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      lp.at(r, j) = coef(rng);
      at_center += lp.at(r, j) * center[j];
    }
    lp.b[r] = at_center + slack(rng);
  }
  return lp;
}

void check_feasible(const LinearProgram& lp, const std::vector<double>& x, double tol) {
  for (std::size_t j = 0; j < lp.num_vars(); ++j) {
    CHECK(x[j] >= lp.lower[j] - tol);
    CHECK(x[j] <= lp.upper[j] + tol);
  }
  for (std::size_t r = 0; r < lp.num_rows(); ++r) {
    double dot = 0.0;
    for (std::size_t j = 0; j < lp.num_vars(); ++j) dot += lp.at(r, j) * x[j];
    CHECK(dot <= lp.b[r] + tol);
  }
}

}  // namespace

TEST_CASE("single-variable maximization hits its bound") {
  LinearProgram lp = LinearProgram::with_dims(1, 1);
  lp.c[0] = -1.0;
  lp.at(0, 0) = 1.0;
  lp.b[0] = 5.0;
  lp.lower[0] = 0.0;

  const LpSolution sol = solve(lp);
  REQUIRE(sol.status == LpStatus::Optimal);
  CHECK(sol.x[0] == doctest::Approx(5.0));
  CHECK(sol.objective == doctest::Approx(-5.0));

  const LpSolution oracle = vertex_oracle(lp);
  REQUIRE(oracle.status == LpStatus::Optimal);
  CHECK(oracle.x[0] == doctest::Approx(5.0));
}

TEST_CASE("empty feasible set is classified infeasible") {
  LinearProgram lp = LinearProgram::with_dims(1, 1);
  lp.c[0] = 1.0;
  lp.at(0, 0) = 1.0;
  lp.b[0] = -1.0;  // x <= -1 against x >= 0
  lp.lower[0] = 0.0;
  CHECK(solve(lp).status == LpStatus::Infeasible);
  CHECK(vertex_oracle(lp).status == LpStatus::Infeasible);
}

TEST_CASE("missing bound along an improving ray is unbounded") {
  LinearProgram lp = LinearProgram::with_dims(1, 2);
  lp.c = {-1.0, 0.0};
  lp.at(0, 1) = 1.0;
  lp.b[0] = 3.0;
  lp.lower = {0.0, 0.0};  // x0 has no upper bound and negative cost
  CHECK(solve(lp).status == LpStatus::Unbounded);
  CHECK(vertex_oracle(lp).status == LpStatus::Unbounded);
}

TEST_CASE("duplicate rows leave the optimum unchanged") {
  LinearProgram lp = LinearProgram::with_dims(4, 2);
  lp.c = {-1.0, -2.0};
  const double rows[4][2] = {{1.0, 1.0}, {1.0, 1.0}, {1.0, 0.0}, {1.0, 0.0}};
  for (std::size_t r = 0; r < 4; ++r)
    for (std::size_t j = 0; j < 2; ++j) lp.at(r, j) = rows[r][j];
  lp.b = {4.0, 4.0, 3.0, 3.0};
  lp.lower = {0.0, 0.0};
  lp.upper = {10.0, 10.0};

  const LpSolution sol = solve(lp);
  const LpSolution oracle = vertex_oracle(lp);
  REQUIRE(sol.status == LpStatus::Optimal);
  REQUIRE(oracle.status == LpStatus::Optimal);
  CHECK(sol.objective == doctest::Approx(oracle.objective).epsilon(1e-9));
  CHECK(sol.objective == doctest::Approx(-8.0));
}

TEST_CASE("simplex agrees with vertex enumeration on random instances") {
  std::mt19937_64 rng(101);
  int optimal_seen = 0;
  int infeasible_seen = 0;
  for (int k = 0; k < 120; ++k) {
    const LinearProgram lp = random_lp(rng);
    const LpSolution mine = solve(lp);
    const LpSolution ref = vertex_oracle(lp);
    REQUIRE(mine.status == ref.status);
    if (mine.status == LpStatus::Optimal) {
      ++optimal_seen;
      CHECK(std::abs(mine.objective - ref.objective) <= 1e-7);
      check_feasible(lp, mine.x, 1e-7);
      // Weak duality sanity: the oracle's point cannot beat the optimum.
      CHECK(ref.objective >= mine.objective - 1e-7);
    } else {
      ++infeasible_seen;
    }
  }
  CHECK(optimal_seen > 50);
  CHECK(infeasible_seen > 5);
}

TEST_CASE("solves are deterministic") {
  std::mt19937_64 rng(202);
  const LinearProgram lp = random_lp(rng);
  const LpSolution a = solve(lp);
  const LpSolution b = solve(lp);
  REQUIRE(a.status == b.status);
  CHECK(a.objective == b.objective);
  CHECK(a.iterations == b.iterations);
  if (a.status == LpStatus::Optimal) CHECK(a.x == b.x);
}

TEST_CASE("parallel elimination is bit-identical to the serial reference") {
  std::mt19937_64 rng(303);
  SimplexOptions serial;
  serial.policy = ExecPolicy::Serial;
  SimplexOptions parallel;
  parallel.policy = ExecPolicy::Parallel;
  for (int k = 0; k < 40; ++k) {
    const LinearProgram lp = random_lp(rng);
    const LpSolution a = solve(lp, serial);
    const LpSolution b = solve(lp, parallel);
    REQUIRE(a.status == b.status);
    CHECK(a.iterations == b.iterations);
    CHECK(a.objective == b.objective);
    if (a.status == LpStatus::Optimal) CHECK(a.x == b.x);
  }
}

TEST_CASE("validation rejects malformed programs") {
  LinearProgram lp = LinearProgram::with_dims(1, 2);
  lp.b.push_back(1.0);  // dimension mismatch
  CHECK_THROWS_AS(solve(lp), std::invalid_argument);

  LinearProgram nan_lp = LinearProgram::with_dims(1, 1);
  nan_lp.c[0] = std::nan("");
  CHECK_THROWS_AS(solve(nan_lp), std::invalid_argument);
}

TEST_CASE("debug dump is plain rows") {
  LinearProgram lp = LinearProgram::with_dims(1, 2);
  lp.c = {1.0, 2.0};
  lp.at(0, 0) = 3.0;
  lp.b[0] = 4.0;
  std::ostringstream os;
  dump(lp, os);
  const std::string text = os.str();
  CHECK(text.find("nemarb-lp vars 2 rows 1") != std::string::npos);
  CHECK(text.find("c 1 2") != std::string::npos);
  CHECK(text.find("A 3 0 <= 4") != std::string::npos);
  CHECK(text.find("inf") != std::string::npos);
}
