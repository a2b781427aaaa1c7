#include "nemarb/cycles.hpp"

#include <algorithm>

namespace nemarb {

CycleReport count_cycles(const std::vector<double>& x_star, const BatteryParams& battery) {
  CycleReport report;
  for (double x : x_star) report.discharge_throughput_wh += std::max(0.0, -x);
  const double usable = battery.b_max_wh - battery.b_min_wh;
  report.equivalent_cycles =
      report.discharge_throughput_wh > 0.0 ? report.discharge_throughput_wh / usable : 0.0;
  return report;
}

std::optional<double> gains_per_cycle(double gains, const CycleReport& report) {
  if (report.equivalent_cycles <= 0.0) return std::nullopt;
  return gains / report.equivalent_cycles;
}

}  // namespace nemarb
