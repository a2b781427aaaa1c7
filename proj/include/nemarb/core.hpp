#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <vector>

// Domain types shared by every other module. Unit conventions are fixed
// project-wide: energy in Wh, power in W, durations in hours, prices in
// currency-cents per kWh. All conversions happen at ingestion.

namespace nemarb {

/// Discretization of the operating horizon into N steps of h_i hours each.
class TimeGrid {
 public:
  explicit TimeGrid(std::vector<double> step_hours);

  /// Uniform grid of n steps, each step_hours long.
  static TimeGrid uniform(std::size_t n, double step_hours);

  std::size_t size() const { return steps_.size(); }
  double step_hours(std::size_t i) const { return steps_[i]; }
  const std::vector<double>& steps() const { return steps_; }
  double total_hours() const { return total_hours_; }

 private:
  std::vector<double> steps_;
  double total_hours_ = 0.0;
};

/// Per-step buying and selling price of electricity, cents/kWh.
/// Requires p_buy >= p_sell >= 0 on every step (the convexity precondition).
struct PriceSeries {
  std::vector<double> buy;
  std::vector<double> sell;

  PriceSeries(std::vector<double> buy_prices, std::vector<double> sell_prices);

  /// Sell price derived as kappa * buy on every step.
  static PriceSeries from_kappa(std::vector<double> buy_prices, double kappa);

  std::size_t size() const { return buy.size(); }
};

/// Net consumer energy per step, Wh: z = demand - renewable generation.
struct NetLoadSeries {
  std::vector<double> z;

  explicit NetLoadSeries(std::vector<double> net);
  /// Element-wise z = d - r from separate demand and generation columns.
  static NetLoadSeries from_components(const std::vector<double>& demand,
                                       const std::vector<double>& generation);
  /// z identically zero (only-storage operation).
  static NetLoadSeries zeros(std::size_t n);

  std::size_t size() const { return z.size(); }
};

struct BatteryParams {
  double b_min_wh = 0.0;
  double b_max_wh = 0.0;
  double b0_wh = 0.0;
  double eta_ch = 1.0;
  double eta_dis = 1.0;
  double eta_fric = 1.0;
  double delta_min_w = 0.0;  // <= 0, max discharge ramp
  double delta_max_w = 0.0;  // >= 0, max charge ramp

  /// Throws std::invalid_argument if any invariant is violated:
  /// 0 <= b_min <= b0 <= b_max, efficiencies in (0,1], delta_min <= 0 <= delta_max.
  void validate() const;
};

/// One fully specified, solvable instance of the arbitrage problem.
struct Scenario {
  TimeGrid grid;
  PriceSeries prices;
  NetLoadSeries netload;
  BatteryParams battery;

  Scenario(TimeGrid g, PriceSeries p, NetLoadSeries z, BatteryParams bat);

  std::size_t size() const { return grid.size(); }

  /// Same scenario with z set to zero everywhere (only-storage variant).
  Scenario without_load() const;
};

/// Ratio of selling and buying price at step i. Requires p_buy(i) > 0.
double kappa(const PriceSeries& prices, std::size_t i);

/// Per-step energy window [X_min_i, X_max_i] in Wh implied by the ramp limits.
std::pair<double, double> ramp_energy_bounds(const BatteryParams& battery,
                                             const TimeGrid& grid, std::size_t i);

/// xC-yC shorthand: charging at x C fills b_max in 1/x hours, discharging at
/// y C empties it in 1/y hours. Returns (delta_max_w, delta_min_w).
std::pair<double, double> c_rate_to_ramp(double charge_c_rate, double discharge_c_rate,
                                         double b_max_wh);

/// Folds the friction coefficient into both efficiencies and resets it to 1.
BatteryParams apply_friction(const BatteryParams& battery);

}  // namespace nemarb
