#pragma once

#include <cstddef>
#include <iosfwd>
#include <limits>
#include <vector>

// Dense linear program in the form
//     min c.x   s.t.  A.x <= b,   lower <= x <= upper,
// with +-infinity allowed in the bounds, and a two-phase primal simplex
// solver with Bland's anti-cycling rule.

namespace nemarb::lp {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

struct LinearProgram {
  std::vector<double> c;      // length n
  std::vector<double> a;      // row-major, m x n
  std::vector<double> b;      // length m
  std::vector<double> lower;  // length n, -inf allowed
  std::vector<double> upper;  // length n, +inf allowed

  static LinearProgram with_dims(std::size_t rows, std::size_t cols);

  std::size_t num_vars() const { return c.size(); }
  std::size_t num_rows() const { return b.size(); }

  double& at(std::size_t row, std::size_t col) { return a[row * c.size() + col]; }
  double at(std::size_t row, std::size_t col) const { return a[row * c.size() + col]; }

  /// Throws std::invalid_argument on inconsistent dimensions or NaN entries.
  void validate() const;
};

enum class LpStatus { Optimal, Infeasible, Unbounded };

struct LpSolution {
  LpStatus status = LpStatus::Infeasible;
  std::vector<double> x;    // primal point, present iff Optimal
  double objective = 0.0;   // c.x at the returned point
  int iterations = 0;       // simplex pivots performed
};

/// Where the tableau elimination runs. Serial is the reference path; the
/// parallel path must produce bit-identical tableaus (tested).
enum class ExecPolicy { Auto, Serial, Parallel };

struct SimplexOptions {
  double feas_tol = 1e-9;    // feasibility / optimality tolerance
  double pivot_tol = 1e-11;  // smallest acceptable pivot magnitude
  ExecPolicy policy = ExecPolicy::Auto;
  std::size_t max_iterations = 0;  // 0 = size-derived cap
};

/// Two-phase primal simplex. Bounds are handled by shifting/mirroring and
/// free variables by splitting, so the returned point honors them exactly
/// (up to feas_tol). Deterministic: identical input gives identical output.
LpSolution solve(const LinearProgram& lp, const SimplexOptions& options = {});

/// Plain-text dump of (c, A, b, bounds), one matrix row per line, for
/// external cross-checking.
void dump(const LinearProgram& lp, std::ostream& os);

}  // namespace nemarb::lp
