#pragma once

#include <cstddef>

// Hot loops of the simplex solver: normalizing the pivot row and eliminating
// the pivot column from every other tableau row. The serial versions are the
// reference; the OpenMP versions split work by row (or by column for the
// normalization), so each element sees the same arithmetic in the same order
// and the results are bit-identical to the serial path.

namespace nemarb::lp::kernels {

/// Multiplies row `pr` of the (rows x width) tableau by inv_pivot and writes
/// exact 1.0 at the pivot column.
void normalize_pivot_row_serial(double* tab, std::size_t width, std::size_t pr,
                                std::size_t pc, double inv_pivot);
void normalize_pivot_row_parallel(double* tab, std::size_t width, std::size_t pr,
                                  std::size_t pc, double inv_pivot);

/// Subtracts tab[r][pc] * pivot_row from every row r != pr and writes exact
/// 0.0 at the pivot column. Assumes the pivot row is already normalized.
void eliminate_column_serial(double* tab, std::size_t rows, std::size_t width,
                             std::size_t pr, std::size_t pc);
void eliminate_column_parallel(double* tab, std::size_t rows, std::size_t width,
                               std::size_t pr, std::size_t pc);

/// True when this build can actually run the parallel path.
bool parallel_available();

}  // namespace nemarb::lp::kernels
