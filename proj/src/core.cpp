#include "nemarb/core.hpp"

#include <cmath>
#include <numeric>
#include <string>

namespace nemarb {

namespace {

void require(bool ok, const std::string& what) {
  if (!ok) throw std::invalid_argument(what);
}

bool all_finite(const std::vector<double>& v) {
  for (double x : v)
    if (!std::isfinite(x)) return false;
  return true;
}

}  // namespace

TimeGrid::TimeGrid(std::vector<double> step_hours) : steps_(std::move(step_hours)) {
  require(!steps_.empty(), "TimeGrid: need at least one step");
  for (double h : steps_)
    require(std::isfinite(h) && h > 0.0, "TimeGrid: every step duration must be > 0");
  total_hours_ = std::accumulate(steps_.begin(), steps_.end(), 0.0);
}

TimeGrid TimeGrid::uniform(std::size_t n, double step_hours) {
  return TimeGrid(std::vector<double>(n, step_hours));
}

PriceSeries::PriceSeries(std::vector<double> buy_prices, std::vector<double> sell_prices)
    : buy(std::move(buy_prices)), sell(std::move(sell_prices)) {
  require(buy.size() == sell.size(), "PriceSeries: buy/sell length mismatch");
  require(all_finite(buy) && all_finite(sell), "PriceSeries: non-finite price");
  for (std::size_t i = 0; i < buy.size(); ++i)
    require(buy[i] >= sell[i] && sell[i] >= 0.0,
            "PriceSeries: requires p_buy >= p_sell >= 0 at step " + std::to_string(i));
}

PriceSeries PriceSeries::from_kappa(std::vector<double> buy_prices, double kappa) {
  require(kappa >= 0.0 && kappa <= 1.0, "PriceSeries: kappa must be in [0,1]");
  std::vector<double> sell(buy_prices.size());
  for (std::size_t i = 0; i < buy_prices.size(); ++i) sell[i] = kappa * buy_prices[i];
  return PriceSeries(std::move(buy_prices), std::move(sell));
}

NetLoadSeries::NetLoadSeries(std::vector<double> net) : z(std::move(net)) {
  require(all_finite(z), "NetLoadSeries: non-finite value");
}

NetLoadSeries NetLoadSeries::from_components(const std::vector<double>& demand,
                                             const std::vector<double>& generation) {
  require(demand.size() == generation.size(), "NetLoadSeries: d/r length mismatch");
  std::vector<double> net(demand.size());
  for (std::size_t i = 0; i < demand.size(); ++i) net[i] = demand[i] - generation[i];
  return NetLoadSeries(std::move(net));
}

NetLoadSeries NetLoadSeries::zeros(std::size_t n) {
  return NetLoadSeries(std::vector<double>(n, 0.0));
}

void BatteryParams::validate() const {
  require(std::isfinite(b_min_wh) && std::isfinite(b_max_wh) && std::isfinite(b0_wh),
          "BatteryParams: non-finite capacity");
  require(b_min_wh >= 0.0 && b_min_wh <= b0_wh && b0_wh <= b_max_wh,
          "BatteryParams: requires 0 <= b_min <= b0 <= b_max");
  require(eta_ch > 0.0 && eta_ch <= 1.0, "BatteryParams: eta_ch must be in (0,1]");
  require(eta_dis > 0.0 && eta_dis <= 1.0, "BatteryParams: eta_dis must be in (0,1]");
  require(eta_fric > 0.0 && eta_fric <= 1.0, "BatteryParams: eta_fric must be in (0,1]");
  require(delta_min_w <= 0.0 && delta_max_w >= 0.0,
          "BatteryParams: requires delta_min <= 0 <= delta_max");
}

Scenario::Scenario(TimeGrid g, PriceSeries p, NetLoadSeries z, BatteryParams bat)
    : grid(std::move(g)), prices(std::move(p)), netload(std::move(z)), battery(bat) {
  require(prices.size() == grid.size() && netload.size() == grid.size(),
          "Scenario: series lengths must equal the grid step count");
  battery.validate();
}

Scenario Scenario::without_load() const {
  return Scenario(grid, prices, NetLoadSeries::zeros(grid.size()), battery);
}

double kappa(const PriceSeries& prices, std::size_t i) {
  if (prices.buy[i] <= 0.0)
    throw std::domain_error("kappa: undefined ratio, zero buying price at step " +
                            std::to_string(i));
  return prices.sell[i] / prices.buy[i];
}

std::pair<double, double> ramp_energy_bounds(const BatteryParams& battery,
                                             const TimeGrid& grid, std::size_t i) {
  const double h = grid.step_hours(i);
  return {battery.delta_min_w * h, battery.delta_max_w * h};
}

std::pair<double, double> c_rate_to_ramp(double charge_c_rate, double discharge_c_rate,
                                         double b_max_wh) {
  require(charge_c_rate > 0.0 && discharge_c_rate > 0.0,
          "c_rate_to_ramp: C-rates must be > 0");
  return {charge_c_rate * b_max_wh, -discharge_c_rate * b_max_wh};
}

BatteryParams apply_friction(const BatteryParams& battery) {
  BatteryParams out = battery;
  out.eta_ch = battery.eta_ch * battery.eta_fric;
  out.eta_dis = battery.eta_dis * battery.eta_fric;
  out.eta_fric = 1.0;
  return out;
}

}  // namespace nemarb
