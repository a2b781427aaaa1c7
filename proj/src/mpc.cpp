#include "nemarb/mpc.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <stdexcept>

#include "nemarb/arbitrage.hpp"
#include "nemarb/costmodel.hpp"

namespace nemarb::mpc {

std::vector<double> PerfectForecaster::load_wh(std::size_t from, std::size_t horizon) {
  std::vector<double> out(horizon);
  for (std::size_t k = 0; k < horizon; ++k) out[k] = actuals_->netload.z[from + k];
  return out;
}

std::pair<std::vector<double>, std::vector<double>> PerfectForecaster::prices(
    std::size_t from, std::size_t horizon) {
  std::vector<double> buy(horizon), sell(horizon);
  for (std::size_t k = 0; k < horizon; ++k) {
    buy[k] = actuals_->prices.buy[from + k];
    sell[k] = actuals_->prices.sell[from + k];
  }
  return {std::move(buy), std::move(sell)};
}

ArmaForecaster::ArmaForecaster(std::vector<double> hist_load_wh,
                               std::vector<double> hist_price_buy, const MpcConfig& config)
    : config_(config),
      load_series_(std::move(hist_load_wh)),
      price_series_(std::move(hist_price_buy)),
      hist_len_(load_series_.size()) {
  if (load_series_.size() != price_series_.size())
    throw std::invalid_argument("ArmaForecaster: history length mismatch");
  if (config_.kappa) last_ratio_ = *config_.kappa;
  fit();
}

std::vector<double> ArmaForecaster::window(const std::vector<double>& series) const {
  const std::size_t len = std::min(series.size(), config_.train_window);
  return {series.end() - static_cast<std::ptrdiff_t>(len), series.end()};
}

void ArmaForecaster::fit() {
  const std::vector<double> loads = window(load_series_);
  constant_load_ =
      std::all_of(loads.begin(), loads.end(), [&](double v) { return v == loads.front(); });
  if (constant_load_) {
    load_model_ = forecast::ArmaModel{};
    load_model_.mean = loads.front();
  } else {
    load_model_ = forecast::fit_arma(loads, config_.load_model.p, config_.load_model.q);
  }
  price_model_ = forecast::fit_arima(window(price_series_), config_.price_model.p,
                                     config_.price_model.d, config_.price_model.q);
}

void ArmaForecaster::observe(double z_wh, double price_buy, double price_sell) {
  load_series_.push_back(z_wh);
  price_series_.push_back(price_buy);
  if (!config_.kappa && price_buy > 0.0)
    last_ratio_ = std::clamp(price_sell / price_buy, 0.0, 1.0);
  ++observed_;
  if (config_.refit_every > 0 && observed_ % config_.refit_every == 0) fit();
}

std::vector<double> ArmaForecaster::load_wh(std::size_t from, std::size_t horizon) {
  if (from != observed_)
    throw std::logic_error("ArmaForecaster: forecast origin out of sync with observations");
  return forecast::forecast_arma(load_model_, load_series_, horizon);
}

std::pair<std::vector<double>, std::vector<double>> ArmaForecaster::prices(
    std::size_t from, std::size_t horizon) {
  if (from != observed_)
    throw std::logic_error("ArmaForecaster: forecast origin out of sync with observations");
  std::vector<double> buy = forecast::forecast_arima(price_model_, price_series_, horizon);
  std::vector<double> sell(horizon);
  const double ratio = std::clamp(last_ratio_, 0.0, 1.0);
  for (std::size_t k = 0; k < horizon; ++k) {
    buy[k] = std::max(buy[k], 0.0);
    sell[k] = ratio * buy[k];
  }
  return {std::move(buy), std::move(sell)};
}

void MpcTrace::write_csv(std::ostream& os) const {
  os << "step,z_wh,price_buy,price_sell,x_wh,b_wh,step_cost_cents,incident\n";
  os.precision(12);
  for (std::size_t i = 0; i < steps.size(); ++i) {
    const MpcStepRecord& s = steps[i];
    os << i << ',' << s.z_wh << ',' << s.price_buy << ',' << s.price_sell << ',' << s.x_wh
       << ',' << s.b_wh << ',' << s.step_cost << ',' << (s.incident ? 1 : 0) << '\n';
  }
}

MpcTrace run_mpc(const Scenario& actuals, const MpcConfig& config, Forecaster& forecaster,
                 const lp::SimplexOptions& lp_options) {
  if (config.n_opt < 1) throw std::invalid_argument("run_mpc: n_opt must be >= 1");
  const std::size_t n = actuals.size();
  const BatteryParams& battery = actuals.battery;

  MpcTrace trace;
  trace.steps.reserve(n);
  double level = battery.b0_wh;

  for (std::size_t i = 0; i < n; ++i) {
    const double z_i = actuals.netload.z[i];
    const double pb_i = actuals.prices.buy[i];
    const double ps_i = actuals.prices.sell[i];
    forecaster.observe(z_i, pb_i, ps_i);

    const std::size_t horizon = std::min(config.n_opt, n - i);
    double committed = 0.0;
    bool incident = false;
    try {
      // Slot 0 carries the observed values; later slots the forecasts.
      std::vector<double> z{z_i};
      std::vector<double> buy{pb_i};
      std::vector<double> sell{ps_i};
      std::vector<double> hours{actuals.grid.step_hours(i)};
      if (horizon > 1) {
        const std::vector<double> fz = forecaster.load_wh(i + 1, horizon - 1);
        auto [fb, fs] = forecaster.prices(i + 1, horizon - 1);
        for (std::size_t k = 0; k < horizon - 1; ++k) {
          z.push_back(fz[k]);
          const double b = std::max(fb[k], 0.0);
          buy.push_back(b);
          sell.push_back(std::clamp(fs[k], 0.0, b));
          hours.push_back(actuals.grid.step_hours(i + 1 + k));
        }
      }
      BatteryParams horizon_battery = battery;
      horizon_battery.b0_wh = level;
      const Scenario window(TimeGrid(std::move(hours)),
                            PriceSeries(std::move(buy), std::move(sell)),
                            NetLoadSeries(std::move(z)), horizon_battery);
      committed = solve_arbitrage(window, lp_options).x_star.front();
    } catch (const std::exception&) {
      committed = 0.0;  // degrade, don't abort
      incident = true;
    }

    // Enforce ramp and capacity on the actual state regardless of what the
    // horizon problem believed.
    const auto [ramp_lo, ramp_hi] = ramp_energy_bounds(battery, actuals.grid, i);
    const double lo = std::max(ramp_lo, battery.b_min_wh - level);
    const double hi = std::min(ramp_hi, battery.b_max_wh - level);
    committed = std::clamp(committed, lo, hi);

    level += committed;
    MpcStepRecord rec;
    rec.z_wh = z_i;
    rec.price_buy = pb_i;
    rec.price_sell = ps_i;
    rec.x_wh = committed;
    rec.b_wh = level;
    rec.step_cost = cost_nm(committed, z_i, pb_i, ps_i, battery);
    rec.incident = incident;
    trace.steps.push_back(rec);
    trace.realized_cost += rec.step_cost;
    if (incident) ++trace.incidents;
  }

  trace.baseline_cost = baseline_cost(actuals);
  trace.gains = trace.baseline_cost - trace.realized_cost;
  std::vector<double> dispatch(n);
  for (std::size_t i = 0; i < n; ++i) dispatch[i] = trace.steps[i].x_wh;
  trace.cycles = count_cycles(dispatch, battery);
  return trace;
}

}  // namespace nemarb::mpc
