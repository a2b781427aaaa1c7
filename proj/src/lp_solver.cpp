#include "nemarb/lp.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <stdexcept>
#include <string>

#include "nemarb/lp_kernels.hpp"

namespace nemarb::lp {

namespace {

// How an original variable maps onto nonnegative standard-form columns:
//   Shifted:  x = offset + y          (finite lower bound)
//   Mirrored: x = offset - y          (only the upper bound is finite)
//   Split:    x = y_pos - y_neg       (free variable)
struct VarMap {
  enum class Kind { Shifted, Mirrored, Split } kind = Kind::Shifted;
  std::size_t col = 0;
  std::size_t col_neg = 0;
  double offset = 0.0;
};

struct Workspace {
  std::size_t rows = 0;        // constraint rows
  std::size_t cols = 0;        // structural + slack + artificial columns
  std::size_t width = 0;       // cols + 1 (RHS)
  std::size_t first_art = 0;   // first artificial column index
  std::vector<double> tab;     // (rows + 2) x width; row `rows` = phase-2 cost,
                               // row rows+1 = phase-1 cost
  std::vector<std::size_t> basis;
  std::vector<char> allowed;   // columns eligible to enter the basis
  std::vector<char> active;    // rows still participating in ratio tests

  double& at(std::size_t r, std::size_t j) { return tab[r * width + j]; }
  double at(std::size_t r, std::size_t j) const { return tab[r * width + j]; }
  double& rhs(std::size_t r) { return tab[r * width + width - 1]; }
  double rhs(std::size_t r) const { return tab[r * width + width - 1]; }
};

void pivot(Workspace& ws, std::size_t pr, std::size_t pc, bool parallel) {
  const double inv = 1.0 / ws.at(pr, pc);
  const std::size_t all_rows = ws.rows + 2;  // cost rows are eliminated too
  if (parallel) {
    kernels::normalize_pivot_row_parallel(ws.tab.data(), ws.width, pr, pc, inv);
    kernels::eliminate_column_parallel(ws.tab.data(), all_rows, ws.width, pr, pc);
  } else {
    kernels::normalize_pivot_row_serial(ws.tab.data(), ws.width, pr, pc, inv);
    kernels::eliminate_column_serial(ws.tab.data(), all_rows, ws.width, pr, pc);
  }
  ws.basis[pr] = pc;
}

// Bland's rule: the lowest-index eligible column enters; among minimum-ratio
// rows the one whose basic variable has the lowest index leaves.
std::ptrdiff_t pick_entering(const Workspace& ws, std::size_t cost_row, double tol) {
  for (std::size_t j = 0; j < ws.cols; ++j)
    if (ws.allowed[j] && ws.at(cost_row, j) < -tol) return static_cast<std::ptrdiff_t>(j);
  return -1;
}

std::ptrdiff_t pick_leaving(const Workspace& ws, std::size_t entering,
                            const SimplexOptions& opt) {
  std::ptrdiff_t leave = -1;
  double best_ratio = kInf;
  for (std::size_t r = 0; r < ws.rows; ++r) {
    if (!ws.active[r]) continue;
    const double coef = ws.at(r, entering);
    if (coef <= opt.pivot_tol) continue;
    const double ratio = std::max(ws.rhs(r), 0.0) / coef;
    if (leave < 0) {
      best_ratio = ratio;
      leave = static_cast<std::ptrdiff_t>(r);
      continue;
    }
    const double slack = 1e-12 * (1.0 + best_ratio);
    if (ratio < best_ratio - slack) {
      best_ratio = ratio;
      leave = static_cast<std::ptrdiff_t>(r);
    } else if (ratio <= best_ratio + slack &&
               ws.basis[r] < ws.basis[static_cast<std::size_t>(leave)]) {
      leave = static_cast<std::ptrdiff_t>(r);
    }
  }
  return leave;
}

}  // namespace

LinearProgram LinearProgram::with_dims(std::size_t rows, std::size_t cols) {
  LinearProgram lp;
  lp.c.assign(cols, 0.0);
  lp.a.assign(rows * cols, 0.0);
  lp.b.assign(rows, 0.0);
  lp.lower.assign(cols, -kInf);
  lp.upper.assign(cols, kInf);
  return lp;
}

void LinearProgram::validate() const {
  const std::size_t n = c.size();
  const std::size_t m = b.size();
  if (lower.size() != n || upper.size() != n || a.size() != m * n)
    throw std::invalid_argument("LinearProgram: inconsistent dimensions");
  for (double v : c)
    if (!std::isfinite(v)) throw std::invalid_argument("LinearProgram: non-finite cost");
  for (double v : a)
    if (!std::isfinite(v)) throw std::invalid_argument("LinearProgram: non-finite matrix entry");
  for (double v : b)
    if (!std::isfinite(v)) throw std::invalid_argument("LinearProgram: non-finite rhs");
  for (std::size_t j = 0; j < n; ++j)
    if (std::isnan(lower[j]) || std::isnan(upper[j]))
      throw std::invalid_argument("LinearProgram: NaN bound");
}

LpSolution solve(const LinearProgram& lp, const SimplexOptions& options) {
  lp.validate();
  const std::size_t n = lp.num_vars();
  const std::size_t m = lp.num_rows();

  for (std::size_t j = 0; j < n; ++j)
    if (lp.lower[j] > lp.upper[j]) return {LpStatus::Infeasible, {}, 0.0, 0};

  // Variable substitutions; doubly bounded variables get an extra row for
  // the upper bound.
  std::vector<VarMap> vmap(n);
  std::vector<std::pair<std::size_t, double>> upper_rows;  // (column, range)
  std::size_t n_struct = 0;
  for (std::size_t j = 0; j < n; ++j) {
    const double lb = lp.lower[j];
    const double ub = lp.upper[j];
    if (std::isfinite(lb)) {
      vmap[j] = {VarMap::Kind::Shifted, n_struct++, 0, lb};
      if (std::isfinite(ub)) upper_rows.emplace_back(vmap[j].col, ub - lb);
    } else if (std::isfinite(ub)) {
      vmap[j] = {VarMap::Kind::Mirrored, n_struct++, 0, ub};
    } else {
      const std::size_t pos = n_struct;
      n_struct += 2;
      vmap[j] = {VarMap::Kind::Split, pos, pos + 1, 0.0};
    }
  }

  const std::size_t rows = m + upper_rows.size();

  // Substituted rows as (coeffs over structural columns | rhs).
  std::vector<double> head(rows * n_struct, 0.0);
  std::vector<double> head_rhs(rows, 0.0);
  for (std::size_t r = 0; r < m; ++r) {
    double rhs = lp.b[r];
    for (std::size_t j = 0; j < n; ++j) {
      const double aij = lp.at(r, j);
      if (aij == 0.0) continue;
      const VarMap& vm = vmap[j];
      switch (vm.kind) {
        case VarMap::Kind::Shifted:
          head[r * n_struct + vm.col] += aij;
          rhs -= aij * vm.offset;
          break;
        case VarMap::Kind::Mirrored:
          head[r * n_struct + vm.col] -= aij;
          rhs -= aij * vm.offset;
          break;
        case VarMap::Kind::Split:
          head[r * n_struct + vm.col] += aij;
          head[r * n_struct + vm.col_neg] -= aij;
          break;
      }
    }
    head_rhs[r] = rhs;
  }
  for (std::size_t k = 0; k < upper_rows.size(); ++k) {
    head[(m + k) * n_struct + upper_rows[k].first] = 1.0;
    head_rhs[m + k] = upper_rows[k].second;
  }

  std::size_t n_art = 0;
  for (std::size_t r = 0; r < rows; ++r)
    if (head_rhs[r] < 0.0) ++n_art;

  Workspace ws;
  ws.rows = rows;
  ws.first_art = n_struct + rows;  // one slack per row
  ws.cols = ws.first_art + n_art;
  ws.width = ws.cols + 1;
  ws.tab.assign((rows + 2) * ws.width, 0.0);
  ws.basis.assign(rows, 0);
  ws.allowed.assign(ws.cols, 1);
  ws.active.assign(rows, 1);

  const std::size_t ph2 = rows;      // phase-2 cost row
  const std::size_t ph1 = rows + 1;  // phase-1 cost row

  std::size_t next_art = ws.first_art;
  for (std::size_t r = 0; r < rows; ++r) {
    const double sign = head_rhs[r] < 0.0 ? -1.0 : 1.0;
    for (std::size_t j = 0; j < n_struct; ++j) ws.at(r, j) = sign * head[r * n_struct + j];
    ws.at(r, n_struct + r) = sign;  // slack
    ws.rhs(r) = sign * head_rhs[r];
    if (sign < 0.0) {
      ws.at(r, next_art) = 1.0;
      ws.basis[r] = next_art++;
    } else {
      ws.basis[r] = n_struct + r;
    }
  }

  // Phase-2 costs over structural columns (substitution constants only move
  // the objective by a constant, recovered later via c.x).
  for (std::size_t j = 0; j < n; ++j) {
    const VarMap& vm = vmap[j];
    switch (vm.kind) {
      case VarMap::Kind::Shifted:
        ws.at(ph2, vm.col) += lp.c[j];
        break;
      case VarMap::Kind::Mirrored:
        ws.at(ph2, vm.col) -= lp.c[j];
        break;
      case VarMap::Kind::Split:
        ws.at(ph2, vm.col) += lp.c[j];
        ws.at(ph2, vm.col_neg) -= lp.c[j];
        break;
    }
  }

  // Phase-1 costs: +1 per artificial, then reduce against the initial basis.
  for (std::size_t j = ws.first_art; j < ws.cols; ++j) ws.at(ph1, j) = 1.0;
  for (std::size_t r = 0; r < rows; ++r) {
    if (ws.basis[r] < ws.first_art) continue;
    for (std::size_t j = 0; j < ws.width; ++j) ws.at(ph1, j) -= ws.at(r, j);
  }

  const bool parallel =
      options.policy == ExecPolicy::Parallel ||
      (options.policy == ExecPolicy::Auto && kernels::parallel_available() &&
       (rows + 2) * ws.width >= (std::size_t{1} << 15));

  const std::size_t max_iter = options.max_iterations > 0
                                   ? options.max_iterations
                                   : 2000 + 100 * (rows + ws.cols);
  int iterations = 0;
  auto run_phase = [&](std::size_t cost_row) -> LpStatus {
    for (;;) {
      const std::ptrdiff_t entering = pick_entering(ws, cost_row, options.feas_tol);
      if (entering < 0) return LpStatus::Optimal;
      const std::ptrdiff_t leaving = pick_leaving(ws, static_cast<std::size_t>(entering), options);
      if (leaving < 0) {
        if (cost_row == ph1) {
          // Phase 1 is bounded below by zero; an unblocked column is noise.
          ws.allowed[static_cast<std::size_t>(entering)] = 0;
          continue;
        }
        return LpStatus::Unbounded;
      }
      pivot(ws, static_cast<std::size_t>(leaving), static_cast<std::size_t>(entering), parallel);
      if (++iterations > static_cast<int>(max_iter))
        throw std::runtime_error("simplex: iteration limit exceeded");
    }
  };

  if (n_art > 0) {
    run_phase(ph1);
    if (-ws.rhs(ph1) > options.feas_tol) return {LpStatus::Infeasible, {}, 0.0, iterations};
    // Drive leftover artificials out of the (degenerate) basis, or retire
    // their rows as redundant. The largest coefficient makes the cleanest
    // pivot; these cleanup pivots cannot cycle.
    for (std::size_t r = 0; r < rows; ++r) {
      if (ws.basis[r] < ws.first_art) continue;
      std::ptrdiff_t col = -1;
      double best = options.pivot_tol;
      for (std::size_t j = 0; j < ws.first_art; ++j)
        if (ws.allowed[j] && std::abs(ws.at(r, j)) > best) {
          best = std::abs(ws.at(r, j));
          col = static_cast<std::ptrdiff_t>(j);
        }
      if (col >= 0)
        pivot(ws, r, static_cast<std::size_t>(col), parallel);
      else
        ws.active[r] = 0;
    }
    for (std::size_t j = ws.first_art; j < ws.cols; ++j) ws.allowed[j] = 0;
  }

  const LpStatus status = run_phase(ph2);
  if (status == LpStatus::Unbounded) return {LpStatus::Unbounded, {}, 0.0, iterations};

  std::vector<double> y(ws.cols, 0.0);
  for (std::size_t r = 0; r < rows; ++r)
    if (ws.active[r]) y[ws.basis[r]] = std::max(ws.rhs(r), 0.0);

  std::vector<double> x(n, 0.0);
  for (std::size_t j = 0; j < n; ++j) {
    const VarMap& vm = vmap[j];
    switch (vm.kind) {
      case VarMap::Kind::Shifted:
        x[j] = vm.offset + y[vm.col];
        break;
      case VarMap::Kind::Mirrored:
        x[j] = vm.offset - y[vm.col];
        break;
      case VarMap::Kind::Split:
        x[j] = y[vm.col] - y[vm.col_neg];
        break;
    }
    // Snap roundoff onto the box so downstream state updates stay feasible.
    const double snap = options.feas_tol * (1.0 + std::abs(x[j]));
    if (std::isfinite(lp.lower[j]) && std::abs(x[j] - lp.lower[j]) <= snap) x[j] = lp.lower[j];
    if (std::isfinite(lp.upper[j]) && std::abs(x[j] - lp.upper[j]) <= snap) x[j] = lp.upper[j];
  }

  double objective = 0.0;
  for (std::size_t j = 0; j < n; ++j) objective += lp.c[j] * x[j];
  return {LpStatus::Optimal, std::move(x), objective, iterations};
}

void dump(const LinearProgram& lp, std::ostream& os) {
  const std::size_t n = lp.num_vars();
  const std::size_t m = lp.num_rows();
  os.precision(17);
  os << "nemarb-lp vars " << n << " rows " << m << "\n";
  os << "c";
  for (double v : lp.c) os << " " << v;
  os << "\n";
  for (std::size_t r = 0; r < m; ++r) {
    os << "A";
    for (std::size_t j = 0; j < n; ++j) os << " " << lp.at(r, j);
    os << " <= " << lp.b[r] << "\n";
  }
  os << "lb";
  for (double v : lp.lower) os << " " << v;
  os << "\nub";
  for (double v : lp.upper) os << " " << v;
  os << "\n";
}

}  // namespace nemarb::lp
