#include "nemarb/lp_kernels.hpp"

#if defined(_OPENMP)
#include <omp.h>
#endif

namespace nemarb::lp::kernels {

void normalize_pivot_row_serial(double* tab, std::size_t width, std::size_t pr,
                                std::size_t pc, double inv_pivot) {
  double* row = tab + pr * width;
  for (std::size_t j = 0; j < width; ++j) row[j] *= inv_pivot;
  row[pc] = 1.0;
}

void normalize_pivot_row_parallel(double* tab, std::size_t width, std::size_t pr,
                                  std::size_t pc, double inv_pivot) {
  double* row = tab + pr * width;
#if defined(_OPENMP)
#pragma omp parallel for schedule(static)
#endif
  for (std::ptrdiff_t j = 0; j < static_cast<std::ptrdiff_t>(width); ++j)
    row[j] *= inv_pivot;
  row[pc] = 1.0;
}

void eliminate_column_serial(double* tab, std::size_t rows, std::size_t width,
                             std::size_t pr, std::size_t pc) {
  const double* pivot_row = tab + pr * width;
  for (std::size_t r = 0; r < rows; ++r) {
    if (r == pr) continue;
    double* row = tab + r * width;
    const double factor = row[pc];
    if (factor == 0.0) continue;
    for (std::size_t j = 0; j < width; ++j) row[j] -= factor * pivot_row[j];
    row[pc] = 0.0;
  }
}

void eliminate_column_parallel(double* tab, std::size_t rows, std::size_t width,
                               std::size_t pr, std::size_t pc) {
  const double* pivot_row = tab + pr * width;
#if defined(_OPENMP)
#pragma omp parallel for schedule(static)
#endif
  for (std::ptrdiff_t r = 0; r < static_cast<std::ptrdiff_t>(rows); ++r) {
    if (static_cast<std::size_t>(r) == pr) continue;
    double* row = tab + static_cast<std::size_t>(r) * width;
    const double factor = row[pc];
    if (factor == 0.0) continue;
    for (std::size_t j = 0; j < width; ++j) row[j] -= factor * pivot_row[j];
    row[pc] = 0.0;
  }
}

bool parallel_available() {
#if defined(_OPENMP)
  return true;
#else
  return false;
#endif
}

}  // namespace nemarb::lp::kernels
