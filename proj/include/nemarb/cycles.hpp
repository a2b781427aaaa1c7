#pragma once

#include <optional>
#include <vector>

#include "nemarb/core.hpp"

// Battery usage accounting. One equivalent 100%-DoD cycle is defined as
// discharge throughput equal to the usable range b_max - b_min, measured on
// the stored-energy change x (meter-side losses do not inflate the count).

namespace nemarb {

struct CycleReport {
  double equivalent_cycles = 0.0;
  double discharge_throughput_wh = 0.0;
  std::optional<double> gains_per_cycle;  // cents/cycle, empty when cycles == 0
};

CycleReport count_cycles(const std::vector<double>& x_star, const BatteryParams& battery);

/// gains / equivalent_cycles, or empty when no cycling happened.
std::optional<double> gains_per_cycle(double gains, const CycleReport& report);

}  // namespace nemarb
