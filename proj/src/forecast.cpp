#include "nemarb/forecast.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include <nlohmann/json.hpp>

namespace nemarb::forecast {

namespace {

using json = nlohmann::json;

void check_series(const std::vector<double>& series, int p, int q) {
  if (p < 0 || q < 0) throw std::invalid_argument("fit_arma: negative order");
  const std::size_t need = 10 * static_cast<std::size_t>(p + q + 1);
  if (series.size() < need)
    throw std::invalid_argument("fit_arma: series too short (need >= " +
                                std::to_string(need) + " points)");
  for (double v : series)
    if (!std::isfinite(v)) throw std::invalid_argument("fit_arma: non-finite value");
}

double sample_mean(const std::vector<double>& v) {
  return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

double sample_variance(const std::vector<double>& v, double mean) {
  double acc = 0.0;
  for (double x : v) acc += (x - mean) * (x - mean);
  return acc / static_cast<double>(v.size());
}

// Ordinary least squares via column-pivoted QR.
Eigen::VectorXd ols(const Eigen::MatrixXd& design, const Eigen::VectorXd& target) {
  return design.colPivHouseholderQr().solve(target);
}

// Residuals of w under (phi, theta) with zero presample values.
std::vector<double> filter_residuals(const std::vector<double>& w,
                                     const std::vector<double>& phi,
                                     const std::vector<double>& theta) {
  const std::size_t n = w.size();
  std::vector<double> e(n, 0.0);
  for (std::size_t t = 0; t < n; ++t) {
    double pred = 0.0;
    for (std::size_t j = 0; j < phi.size(); ++j)
      if (t >= j + 1) pred += phi[j] * w[t - j - 1];
    for (std::size_t j = 0; j < theta.size(); ++j)
      if (t >= j + 1) pred += theta[j] * e[t - j - 1];
    e[t] = w[t] - pred;
  }
  return e;
}

// Zero-mean ARMA fit on w; the caller handles mean removal.
ArmaModel fit_centered(const std::vector<double>& w, int p, int q) {
  ArmaModel model;
  model.p = p;
  model.q = q;
  const std::size_t n = w.size();

  if (p == 0 && q == 0) {
    // Nothing to estimate; residuals are the series itself.
  } else if (q == 0) {
    const std::size_t rows = n - static_cast<std::size_t>(p);
    Eigen::MatrixXd design(rows, p);
    Eigen::VectorXd target(rows);
    for (std::size_t t = static_cast<std::size_t>(p); t < n; ++t) {
      target(static_cast<Eigen::Index>(t - p)) = w[t];
      for (int j = 0; j < p; ++j)
        design(static_cast<Eigen::Index>(t - p), j) = w[t - static_cast<std::size_t>(j) - 1];
    }
    const Eigen::VectorXd beta = ols(design, target);
    model.phi.assign(beta.data(), beta.data() + p);
  } else {
    // Stage 1: long AR to proxy the innovations.
    const std::size_t long_order = std::min<std::size_t>(
        n / 4, std::max<std::size_t>(static_cast<std::size_t>(p + q),
                                     static_cast<std::size_t>(10.0 * std::log10(double(n)))));
    Eigen::MatrixXd d1(n - long_order, long_order);
    Eigen::VectorXd t1(static_cast<Eigen::Index>(n - long_order));
    for (std::size_t t = long_order; t < n; ++t) {
      t1(static_cast<Eigen::Index>(t - long_order)) = w[t];
      for (std::size_t j = 0; j < long_order; ++j)
        d1(static_cast<Eigen::Index>(t - long_order), static_cast<Eigen::Index>(j)) =
            w[t - j - 1];
    }
    const Eigen::VectorXd a = ols(d1, t1);
    std::vector<double> proxy(n, 0.0);  // zero before the long-AR burn-in
    for (std::size_t t = long_order; t < n; ++t) {
      double pred = 0.0;
      for (std::size_t j = 0; j < long_order; ++j) pred += a(static_cast<Eigen::Index>(j)) * w[t - j - 1];
      proxy[t] = w[t] - pred;
    }

    // Stage 2: regress on p value lags and q residual lags.
    const std::size_t start = long_order + static_cast<std::size_t>(q);
    if (start >= n) throw std::invalid_argument("fit_arma: series too short for these orders");
    const std::size_t rows = n - start;
    Eigen::MatrixXd d2(rows, p + q);
    Eigen::VectorXd t2(static_cast<Eigen::Index>(rows));
    for (std::size_t t = start; t < n; ++t) {
      t2(static_cast<Eigen::Index>(t - start)) = w[t];
      for (int j = 0; j < p; ++j)
        d2(static_cast<Eigen::Index>(t - start), j) = w[t - static_cast<std::size_t>(j) - 1];
      for (int j = 0; j < q; ++j)
        d2(static_cast<Eigen::Index>(t - start), p + j) = proxy[t - static_cast<std::size_t>(j) - 1];
    }
    const Eigen::VectorXd beta = ols(d2, t2);
    model.phi.assign(beta.data(), beta.data() + p);
    model.theta.assign(beta.data() + p, beta.data() + p + q);
  }

  if (!ar_is_stationary(model.phi))
    throw std::runtime_error(
        "fit_arma: fitted AR polynomial is non-stationary; difference the series first");

  std::vector<double> resid = filter_residuals(w, model.phi, model.theta);
  const std::size_t burn = static_cast<std::size_t>(std::max(p, q));
  double rss = 0.0;
  for (std::size_t t = burn; t < n; ++t) rss += resid[t] * resid[t];
  model.sigma2 = n > burn ? rss / static_cast<double>(n - burn) : 0.0;

  const std::size_t keep =
      std::min<std::size_t>(n, std::max<std::size_t>(64, 8 * static_cast<std::size_t>(p + q + 1)));
  model.fitted_residuals.assign(resid.end() - static_cast<std::ptrdiff_t>(keep), resid.end());
  return model;
}

}  // namespace

bool ar_is_stationary(const std::vector<double>& phi) {
  const std::size_t p = phi.size();
  if (p == 0) return true;
  // Companion matrix of z^p - phi_1 z^{p-1} - ... - phi_p.
  Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(p),
                                                    static_cast<Eigen::Index>(p));
  for (std::size_t j = 0; j < p; ++j) companion(0, static_cast<Eigen::Index>(j)) = phi[j];
  for (std::size_t j = 1; j < p; ++j)
    companion(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(j - 1)) = 1.0;
  const auto eigenvalues = companion.eigenvalues();
  for (Eigen::Index k = 0; k < eigenvalues.size(); ++k)
    if (std::abs(eigenvalues(k)) >= 1.0 - 1e-8) return false;
  return true;
}

ArmaModel fit_arma(const std::vector<double>& series, int p, int q) {
  check_series(series, p, q);
  const double mean = sample_mean(series);
  if (sample_variance(series, mean) <= 0.0)
    throw std::invalid_argument("fit_arma: constant series (zero variance)");
  std::vector<double> w(series.size());
  for (std::size_t i = 0; i < series.size(); ++i) w[i] = series[i] - mean;
  ArmaModel model = fit_centered(w, p, q);
  model.mean = mean;
  return model;
}

std::vector<double> forecast_arma(const ArmaModel& model, const std::vector<double>& history,
                                  std::size_t horizon) {
  if (history.size() < static_cast<std::size_t>(model.p))
    throw std::invalid_argument("forecast_arma: insufficient history");
  const std::size_t n = history.size();
  std::vector<double> w(n);
  for (std::size_t i = 0; i < n; ++i) w[i] = history[i] - model.mean;
  std::vector<double> e = filter_residuals(w, model.phi, model.theta);

  // Future innovations have zero conditional expectation.
  w.reserve(n + horizon);
  e.reserve(n + horizon);
  std::vector<double> out;
  out.reserve(horizon);
  for (std::size_t k = 0; k < horizon; ++k) {
    const std::size_t t = n + k;
    double pred = 0.0;
    for (std::size_t j = 0; j < model.phi.size(); ++j)
      if (t >= j + 1) pred += model.phi[j] * w[t - j - 1];
    for (std::size_t j = 0; j < model.theta.size(); ++j)
      if (t >= j + 1) pred += model.theta[j] * e[t - j - 1];
    w.push_back(pred);
    e.push_back(0.0);
    out.push_back(model.mean + pred);
  }
  return out;
}

std::vector<double> difference(const std::vector<double>& series, int d) {
  if (d < 0 || d > 2) throw std::invalid_argument("difference: d must be in {0,1,2}");
  std::vector<double> out = series;
  for (int pass = 0; pass < d; ++pass) {
    if (out.size() < 2) throw std::invalid_argument("difference: series too short");
    std::vector<double> next(out.size() - 1);
    for (std::size_t i = 0; i + 1 < out.size(); ++i) next[i] = out[i + 1] - out[i];
    out = std::move(next);
  }
  return out;
}

std::vector<double> integrate_once(const std::vector<double>& diffs, double last_level) {
  std::vector<double> out(diffs.size());
  double level = last_level;
  for (std::size_t i = 0; i < diffs.size(); ++i) {
    level += diffs[i];
    out[i] = level;
  }
  return out;
}

ArimaModel fit_arima(const std::vector<double>& series, int p, int d, int q) {
  if (d < 0 || d > 2) throw std::invalid_argument("fit_arima: d must be in {0,1,2}");
  ArimaModel model;
  model.d = d;
  if (d == 0) {
    model.inner = fit_arma(series, p, q);
    return model;
  }
  const std::vector<double> w = difference(series, d);
  check_series(w, p, q);
  if (sample_variance(w, sample_mean(w)) <= 0.0)
    throw std::invalid_argument("fit_arima: constant differenced series (zero variance)");
  model.inner = fit_centered(w, p, q);  // no constant when d >= 1
  model.last_levels.assign(series.end() - d, series.end());
  return model;
}

std::vector<double> forecast_arima(const ArimaModel& model, const std::vector<double>& history,
                                   std::size_t horizon) {
  if (model.d == 0) return forecast_arma(model.inner, history, horizon);
  if (history.size() <= static_cast<std::size_t>(model.d))
    throw std::invalid_argument("forecast_arima: insufficient history");
  std::vector<double> diffed = difference(history, model.d);
  std::vector<double> fc = forecast_arma(model.inner, diffed, horizon);
  // Re-integrate one level at a time against the history's own tails.
  for (int level = model.d - 1; level >= 0; --level) {
    const std::vector<double> tail_series = difference(history, level);
    fc = integrate_once(fc, tail_series.back());
  }
  return fc;
}

std::string ArmaModel::to_json() const {
  json doc;
  doc["p"] = p;
  doc["q"] = q;
  doc["phi"] = phi;
  doc["theta"] = theta;
  doc["mean"] = mean;
  doc["sigma2"] = sigma2;
  doc["fitted_residuals"] = fitted_residuals;
  return doc.dump(2);
}

ArmaModel ArmaModel::from_json(const std::string& text) {
  const json doc = json::parse(text);
  ArmaModel model;
  model.p = doc.at("p").get<int>();
  model.q = doc.at("q").get<int>();
  model.phi = doc.at("phi").get<std::vector<double>>();
  model.theta = doc.at("theta").get<std::vector<double>>();
  model.mean = doc.at("mean").get<double>();
  model.sigma2 = doc.at("sigma2").get<double>();
  model.fitted_residuals = doc.at("fitted_residuals").get<std::vector<double>>();
  return model;
}

std::string ArimaModel::to_json() const {
  json doc;
  doc["d"] = d;
  doc["last_levels"] = last_levels;
  doc["inner"] = json::parse(inner.to_json());
  return doc.dump(2);
}

ArimaModel ArimaModel::from_json(const std::string& text) {
  const json doc = json::parse(text);
  ArimaModel model;
  model.d = doc.at("d").get<int>();
  model.last_levels = doc.at("last_levels").get<std::vector<double>>();
  model.inner = ArmaModel::from_json(doc.at("inner").dump());
  return model;
}

}  // namespace nemarb::forecast
