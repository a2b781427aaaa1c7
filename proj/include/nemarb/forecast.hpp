#pragma once

#include <string>
#include <vector>

// ARMA / ARIMA forecasters for net load and electricity price. Estimation is
// Hannan-Rissanen two-stage least squares: a long autoregression supplies
// residual proxies, then one regression recovers the AR and MA coefficients.
// The mean is estimated and removed only when d == 0; differenced models are
// fit without a constant, so an ARIMA(0,1,0) forecast is flat at the last
// observed value.

namespace nemarb::forecast {

struct ArmaModel {
  int p = 0;
  int q = 0;
  std::vector<double> phi;
  std::vector<double> theta;
  double mean = 0.0;
  double sigma2 = 0.0;
  std::vector<double> fitted_residuals;  // tail of the training residuals

  std::string to_json() const;
  static ArmaModel from_json(const std::string& text);
};

struct ArimaModel {
  int d = 0;
  ArmaModel inner;
  std::vector<double> last_levels;  // last d raw training values

  std::string to_json() const;
  static ArimaModel from_json(const std::string& text);
};

/// Fits by conditional least squares. Throws std::invalid_argument when the
/// series is too short (< 10*(p+q+1)) or constant, std::runtime_error when
/// the fitted AR polynomial fails the stationarity root check.
ArmaModel fit_arma(const std::vector<double>& series, int p, int q);

/// Iterated conditional-expectation forecasts; converges to the model mean
/// beyond the lag depth. Requires history.size() >= p.
std::vector<double> forecast_arma(const ArmaModel& model, const std::vector<double>& history,
                                  std::size_t horizon);

/// Difference d times (d in {0,1,2}), fit a zero-mean ARMA, remember the raw
/// tail for re-integration.
ArimaModel fit_arima(const std::vector<double>& series, int p, int d, int q);

/// Forecast the differenced series and cumulatively re-integrate against the
/// tail of the supplied history.
std::vector<double> forecast_arima(const ArimaModel& model, const std::vector<double>& history,
                                   std::size_t horizon);

/// d-fold forward difference; output is series.size() - d long.
std::vector<double> difference(const std::vector<double>& series, int d);

/// Inverse of one differencing pass given the level the series ended on.
std::vector<double> integrate_once(const std::vector<double>& diffs, double last_level);

/// True when all AR roots lie outside the unit circle.
bool ar_is_stationary(const std::vector<double>& phi);

}  // namespace nemarb::forecast
