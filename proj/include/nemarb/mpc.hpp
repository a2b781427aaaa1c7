#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <utility>
#include <vector>

#include "nemarb/core.hpp"
#include "nemarb/cycles.hpp"
#include "nemarb/forecast.hpp"
#include "nemarb/lp.hpp"

// Rolling-horizon controller: at each step observe the actual load and
// prices, forecast the remaining horizon, solve the epigraph LP over the
// window, commit the first move and advance the battery state.

namespace nemarb::mpc {

struct ModelSpec {
  int p = 2;
  int d = 0;
  int q = 1;
};

struct MpcConfig {
  std::size_t n_opt = 24;                 // rolling horizon length, steps
  ModelSpec load_model{2, 0, 1};          // ARMA for net load
  ModelSpec price_model{2, 1, 1};         // ARIMA for buying price
  std::size_t train_window = 1512;        // fitting window, steps (9 weeks hourly)
  std::size_t refit_every = 0;            // refit cadence in steps; 0 = fit once
  std::optional<double> kappa;            // sell forecast ratio; empty = last observed
};

/// Supplies load and price forecasts for operation-window steps. `from` is
/// the 0-based index of the first forecast step.
class Forecaster {
 public:
  virtual ~Forecaster() = default;
  virtual std::vector<double> load_wh(std::size_t from, std::size_t horizon) = 0;
  virtual std::pair<std::vector<double>, std::vector<double>> prices(std::size_t from,
                                                                     std::size_t horizon) = 0;
  /// Called once per step with the realized values, before forecasting.
  virtual void observe(double z_wh, double price_buy, double price_sell) = 0;
};

/// Test stub that returns the future actuals verbatim.
class PerfectForecaster : public Forecaster {
 public:
  explicit PerfectForecaster(const Scenario& actuals) : actuals_(&actuals) {}
  std::vector<double> load_wh(std::size_t from, std::size_t horizon) override;
  std::pair<std::vector<double>, std::vector<double>> prices(std::size_t from,
                                                             std::size_t horizon) override;
  void observe(double, double, double) override {}

 private:
  const Scenario* actuals_;
};

/// ARMA net-load + ARIMA price forecaster fitted on a historical window,
/// optionally refit every `refit_every` observed steps. A constant load
/// history (no fit possible) is forecast as that constant.
class ArmaForecaster : public Forecaster {
 public:
  ArmaForecaster(std::vector<double> hist_load_wh, std::vector<double> hist_price_buy,
                 const MpcConfig& config);

  std::vector<double> load_wh(std::size_t from, std::size_t horizon) override;
  std::pair<std::vector<double>, std::vector<double>> prices(std::size_t from,
                                                             std::size_t horizon) override;
  void observe(double z_wh, double price_buy, double price_sell) override;

  const forecast::ArmaModel& load_model() const { return load_model_; }
  const forecast::ArimaModel& price_model() const { return price_model_; }

 private:
  void fit();
  std::vector<double> window(const std::vector<double>& series) const;

  MpcConfig config_;
  std::vector<double> load_series_;   // history plus observations
  std::vector<double> price_series_;
  std::size_t hist_len_ = 0;
  std::size_t observed_ = 0;
  double last_ratio_ = 1.0;
  bool constant_load_ = false;
  forecast::ArmaModel load_model_;
  forecast::ArimaModel price_model_;
};

struct MpcStepRecord {
  double z_wh = 0.0;
  double price_buy = 0.0;
  double price_sell = 0.0;
  double x_wh = 0.0;       // committed dispatch
  double b_wh = 0.0;       // battery level after the step
  double step_cost = 0.0;  // realized, cents
  bool incident = false;   // forecast/solve failure, step degraded to x = 0
};

struct MpcTrace {
  std::vector<MpcStepRecord> steps;
  double realized_cost = 0.0;
  double baseline_cost = 0.0;
  double gains = 0.0;
  CycleReport cycles;
  int incidents = 0;

  /// One row per step.
  void write_csv(std::ostream& os) const;
};

/// Runs the controller against the step-wise actuals in `actuals`, reading
/// step i only at iteration i. Horizons truncate near the end of the data.
MpcTrace run_mpc(const Scenario& actuals, const MpcConfig& config, Forecaster& forecaster,
                 const lp::SimplexOptions& lp_options = {});

}  // namespace nemarb::mpc
