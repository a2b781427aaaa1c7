#include <doctest.h>

#include <cmath>
#include <numeric>
#include <random>
#include <stdexcept>

#include "nemarb/forecast.hpp"

using namespace nemarb::forecast;

namespace {

std::vector<double> simulate_ar1(double phi, double mean, double sigma, std::size_t n,
                                 std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, sigma);
  std::vector<double> out(n);
  double dev = 0.0;
  for (std::size_t t = 0; t < n; ++t) {
    dev = phi * dev + gauss(rng);
    out[t] = mean + dev;
  }
  return out;
}

}  // namespace

TEST_CASE("AR(1) coefficient is recovered from simulation") {
  const std::vector<double> series = simulate_ar1(0.8, 5.0, 1.0, 2000, 61);
  const ArmaModel model = fit_arma(series, 1, 0);
  CHECK(model.phi[0] > 0.7);
  CHECK(model.phi[0] < 0.9);
  CHECK(model.mean == doctest::Approx(5.0).epsilon(0.05));
  CHECK(model.sigma2 == doctest::Approx(1.0).epsilon(0.2));
}

TEST_CASE("white noise fits to a near-zero coefficient") {
  const std::vector<double> series = simulate_ar1(0.0, 0.0, 1.0, 2000, 67);
  const ArmaModel model = fit_arma(series, 1, 0);
  CHECK(std::abs(model.phi[0]) <= 0.1);
}

TEST_CASE("degenerate inputs are rejected") {
  CHECK_THROWS_AS(fit_arma(std::vector<double>(100, 3.5), 1, 0), std::invalid_argument);
  CHECK_THROWS_AS(fit_arma({1.0, 2.0, 3.0}, 1, 0), std::invalid_argument);

  // Exponential growth fits an explosive AR root.
  std::vector<double> explosive(200);
  double v = 1.0;
  for (double& y : explosive) {
    y = v;
    v *= 1.05;
  }
  CHECK_THROWS_WITH_AS(fit_arma(explosive, 1, 0), doctest::Contains("difference"),
                       std::runtime_error);
}

TEST_CASE("residual mean stays near zero on ARMA(2,1) data") {
  std::mt19937_64 rng(71);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::vector<double> series(3000);
  double w1 = 0.0, w2 = 0.0, e1 = 0.0;
  for (double& y : series) {
    const double e = gauss(rng);
    const double w = 0.6 * w1 - 0.2 * w2 + e + 0.4 * e1;
    y = 10.0 + w;
    w2 = w1;
    w1 = w;
    e1 = e;
  }
  const ArmaModel model = fit_arma(series, 2, 1);
  // Re-filter the whole series through the fitted model; the innovation
  // sequence must be centered.
  std::vector<double> resid(series.size(), 0.0);
  for (std::size_t t = 0; t < series.size(); ++t) {
    double pred = 0.0;
    for (std::size_t j = 0; j < model.phi.size(); ++j)
      if (t >= j + 1) pred += model.phi[j] * (series[t - j - 1] - model.mean);
    for (std::size_t j = 0; j < model.theta.size(); ++j)
      if (t >= j + 1) pred += model.theta[j] * resid[t - j - 1];
    resid[t] = (series[t] - model.mean) - pred;
  }
  const double mean_resid = std::accumulate(resid.begin() + 2, resid.end(), 0.0) /
                            static_cast<double>(resid.size() - 2);
  const double sd = std::sqrt(model.sigma2);
  CHECK(std::abs(mean_resid) <= 0.05 * sd);
}

TEST_CASE("forecast recursion") {
  SUBCASE("zero-coefficient model forecasts the mean") {
    ArmaModel model;
    model.mean = 7.5;
    const std::vector<double> fc = forecast_arma(model, {1.0, 2.0, 3.0}, 4);
    for (double v : fc) CHECK(v == doctest::Approx(7.5));
  }
  SUBCASE("AR(1) deviations halve each step") {
    ArmaModel model;
    model.p = 1;
    model.phi = {0.5};
    model.mean = 10.0;
    const std::vector<double> fc = forecast_arma(model, {10.0, 10.0, 18.0}, 2);
    CHECK(fc[0] == doctest::Approx(14.0));
    CHECK(fc[1] == doctest::Approx(12.0));
  }
  SUBCASE("far horizon converges to the mean") {
    const std::vector<double> series = simulate_ar1(0.7, 3.0, 2.0, 1200, 73);
    const ArmaModel model = fit_arma(series, 2, 1);
    const std::vector<double> fc = forecast_arma(model, series, 200);
    const double sd = std::sqrt(model.sigma2);
    CHECK(std::abs(fc.back() - model.mean) < 1e-6 * sd);
  }
  SUBCASE("insufficient history is rejected") {
    ArmaModel model;
    model.p = 3;
    model.phi = {0.1, 0.1, 0.1};
    CHECK_THROWS_AS(forecast_arma(model, {1.0, 2.0}, 1), std::invalid_argument);
  }
}

TEST_CASE("differencing and integration invert each other") {
  std::mt19937_64 rng(79);
  std::uniform_real_distribution<double> draw(-5.0, 5.0);
  std::vector<double> series(50);
  for (double& v : series) v = draw(rng);

  for (int d = 1; d <= 2; ++d) {
    const std::vector<double> diffed = difference(series, d);
    CHECK(diffed.size() == series.size() - static_cast<std::size_t>(d));
    // Rebuild the observed tail from the first values and the differences.
    std::vector<double> head(series.begin(), series.begin() + d);
    std::vector<double> rebuilt = diffed;
    for (int level = d - 1; level >= 0; --level) {
      const std::vector<double> level_series = difference(head, level);
      rebuilt = integrate_once(rebuilt, level_series.back());
    }
    for (std::size_t i = 0; i < rebuilt.size(); ++i)
      CHECK(rebuilt[i] == doctest::Approx(series[d + i]).epsilon(1e-12));
  }
}

TEST_CASE("ARIMA paths") {
  SUBCASE("d=0 reduces to plain ARMA") {
    const std::vector<double> series = simulate_ar1(0.6, 2.0, 1.0, 600, 83);
    const ArimaModel arima = fit_arima(series, 1, 0, 0);
    const ArmaModel arma = fit_arma(series, 1, 0);
    CHECK(arima.inner.phi[0] == doctest::Approx(arma.phi[0]).epsilon(1e-12));
    const auto fa = forecast_arima(arima, series, 5);
    const auto fb = forecast_arma(arma, series, 5);
    for (std::size_t i = 0; i < 5; ++i) CHECK(fa[i] == doctest::Approx(fb[i]).epsilon(1e-12));
  }
  SUBCASE("random walk forecasts flat at the last value exactly") {
    std::mt19937_64 rng(89);
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::vector<double> walk(500);
    double level = 100.0;
    for (double& v : walk) {
      level += gauss(rng);
      v = level;
    }
    const ArimaModel model = fit_arima(walk, 0, 1, 0);
    const std::vector<double> fc = forecast_arima(model, walk, 6);
    for (double v : fc) CHECK(v == walk.back());
  }
  SUBCASE("linear trend plus noise keeps its slope under d=1") {
    std::mt19937_64 rng(97);
    std::normal_distribution<double> gauss(0.0, 0.05);
    const double slope = 1.0;
    std::vector<double> series(400);
    for (std::size_t t = 0; t < series.size(); ++t)
      series[t] = slope * static_cast<double>(t) + gauss(rng);
    const ArimaModel model = fit_arima(series, 1, 1, 0);
    const std::vector<double> fc = forecast_arima(model, series, 10);
    const double fitted_slope = (fc.back() - series.back()) / 10.0;
    CHECK(fitted_slope == doctest::Approx(slope).epsilon(0.1));
  }
}

TEST_CASE("models round-trip through JSON") {
  const std::vector<double> series = simulate_ar1(0.5, 1.0, 1.0, 400, 101);
  const ArmaModel arma = fit_arma(series, 2, 1);
  const ArmaModel arma2 = ArmaModel::from_json(arma.to_json());
  CHECK(arma2.phi == arma.phi);
  CHECK(arma2.theta == arma.theta);
  CHECK(arma2.mean == arma.mean);
  CHECK(arma2.sigma2 == arma.sigma2);

  std::vector<double> walk(series.size());
  std::partial_sum(series.begin(), series.end(), walk.begin());
  const ArimaModel arima = fit_arima(walk, 1, 1, 1);
  const ArimaModel arima2 = ArimaModel::from_json(arima.to_json());
  CHECK(arima2.d == arima.d);
  CHECK(arima2.last_levels == arima.last_levels);
  CHECK(arima2.inner.phi == arima.inner.phi);

  // Same model, same history, same forecast.
  const auto fa = forecast_arima(arima, walk, 8);
  const auto fb = forecast_arima(arima2, walk, 8);
  CHECK(fa == fb);
}
