#pragma once

#include "nemarb/lp.hpp"

// Brute-force vertex enumeration, independent of the simplex path. Intended
// for cross-checking small problems (n <= 10) in tests; data magnitudes must
// stay well below the artificial box it adds for missing bounds.

namespace nemarb::lp {

/// Enumerates every intersection of n constraint/bound hyperplanes, keeps the
/// feasible ones, and returns the best objective. Missing bounds are replaced
/// by a +-1e7 box; an optimum that can only be attained on that box is
/// classified Unbounded. Throws std::invalid_argument when n > 10.
LpSolution vertex_oracle(const LinearProgram& lp, double feas_tol = 1e-7);

}  // namespace nemarb::lp
