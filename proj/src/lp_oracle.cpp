#include "nemarb/lp_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace nemarb::lp {

namespace {

constexpr double kBox = 1e7;  // artificial bound standing in for infinity

struct Plane {
  std::vector<double> normal;
  double rhs = 0.0;
  bool artificial = false;
};

// Solves the n x n system (rows of `planes` indexed by `pick`) by Gaussian
// elimination with partial pivoting. Returns false when singular.
bool solve_square(const std::vector<Plane>& planes, const std::vector<std::size_t>& pick,
                  std::size_t n, std::vector<double>& out) {
  std::vector<double> mat(n * (n + 1));
  for (std::size_t r = 0; r < n; ++r) {
    const Plane& p = planes[pick[r]];
    for (std::size_t j = 0; j < n; ++j) mat[r * (n + 1) + j] = p.normal[j];
    mat[r * (n + 1) + n] = p.rhs;
  }
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t pr = k;
    for (std::size_t r = k + 1; r < n; ++r)
      if (std::abs(mat[r * (n + 1) + k]) > std::abs(mat[pr * (n + 1) + k])) pr = r;
    if (std::abs(mat[pr * (n + 1) + k]) < 1e-10) return false;
    if (pr != k)
      for (std::size_t j = k; j <= n; ++j) std::swap(mat[pr * (n + 1) + j], mat[k * (n + 1) + j]);
    const double inv = 1.0 / mat[k * (n + 1) + k];
    for (std::size_t r = k + 1; r < n; ++r) {
      const double f = mat[r * (n + 1) + k] * inv;
      if (f == 0.0) continue;
      for (std::size_t j = k; j <= n; ++j) mat[r * (n + 1) + j] -= f * mat[k * (n + 1) + j];
    }
  }
  out.assign(n, 0.0);
  for (std::size_t k = n; k-- > 0;) {
    double v = mat[k * (n + 1) + n];
    for (std::size_t j = k + 1; j < n; ++j) v -= mat[k * (n + 1) + j] * out[j];
    out[k] = v / mat[k * (n + 1) + k];
  }
  return true;
}

}  // namespace

LpSolution vertex_oracle(const LinearProgram& lp, double feas_tol) {
  lp.validate();
  const std::size_t n = lp.num_vars();
  if (n > 10) throw std::invalid_argument("vertex_oracle: too many variables (n > 10)");
  const std::size_t m = lp.num_rows();
  if (n == 0) {
    for (double rhs : lp.b)
      if (rhs < -feas_tol) return {LpStatus::Infeasible, {}, 0.0, 0};
    return {LpStatus::Optimal, {}, 0.0, 0};
  }

  std::vector<Plane> planes;
  for (std::size_t r = 0; r < m; ++r) {
    Plane p;
    p.normal.assign(n, 0.0);
    for (std::size_t j = 0; j < n; ++j) p.normal[j] = lp.at(r, j);
    p.rhs = lp.b[r];
    planes.push_back(std::move(p));
  }
  std::vector<double> lo(n), hi(n);
  for (std::size_t j = 0; j < n; ++j) {
    lo[j] = std::isfinite(lp.lower[j]) ? lp.lower[j] : -kBox;
    hi[j] = std::isfinite(lp.upper[j]) ? lp.upper[j] : kBox;
    if (lo[j] > hi[j]) return {LpStatus::Infeasible, {}, 0.0, 0};
    for (double bound : {lo[j], hi[j]}) {
      Plane p;
      p.normal.assign(n, 0.0);
      p.normal[j] = 1.0;
      p.rhs = bound;
      p.artificial = std::abs(bound) == kBox;
      planes.push_back(std::move(p));
    }
  }

  auto feasible = [&](const std::vector<double>& x) {
    for (std::size_t j = 0; j < n; ++j)
      if (x[j] < lo[j] - feas_tol || x[j] > hi[j] + feas_tol) return false;
    for (std::size_t r = 0; r < m; ++r) {
      double dot = 0.0;
      for (std::size_t j = 0; j < n; ++j) dot += lp.at(r, j) * x[j];
      if (dot > lp.b[r] + feas_tol) return false;
    }
    return true;
  };

  bool any_feasible = false;
  double best = kInf;
  std::vector<double> best_x;
  bool best_needs_box = false;

  std::vector<std::size_t> pick(n);
  std::vector<double> x;
  // Iterates over all n-subsets of the plane list.
  const std::size_t total = planes.size();
  if (total < n) return {LpStatus::Infeasible, {}, 0.0, 0};
  for (std::size_t j = 0; j < n; ++j) pick[j] = j;
  for (;;) {
    if (solve_square(planes, pick, n, x) && feasible(x)) {
      double obj = 0.0;
      for (std::size_t j = 0; j < n; ++j) obj += lp.c[j] * x[j];
      bool on_box = false;
      for (std::size_t j : pick) on_box = on_box || planes[j].artificial;
      const double tie = 1e-9 * (1.0 + std::abs(best));
      if (!any_feasible || obj < best - tie) {
        best = obj;
        best_x = x;
        best_needs_box = on_box;
      } else if (obj <= best + tie && best_needs_box && !on_box) {
        // Same value away from the artificial box: the optimum is genuine.
        best_x = x;
        best_needs_box = false;
      }
      any_feasible = true;
    }
    // next combination
    std::size_t i = n;
    while (i-- > 0) {
      if (pick[i] + (n - i) < total) {
        ++pick[i];
        for (std::size_t k = i + 1; k < n; ++k) pick[k] = pick[k - 1] + 1;
        break;
      }
      if (i == 0) goto done;
    }
  }
done:
  if (!any_feasible) return {LpStatus::Infeasible, {}, 0.0, 0};
  if (best_needs_box) return {LpStatus::Unbounded, {}, 0.0, 0};
  return {LpStatus::Optimal, std::move(best_x), best, 0};
}

}  // namespace nemarb::lp
