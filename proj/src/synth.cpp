#include "nemarb/synth.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace nemarb::synth {

namespace {
constexpr double kTwoPi = 6.283185307179586;
}

SynthData generate(const SynthConfig& config) {
  std::mt19937_64 rng(config.seed);
  std::normal_distribution<double> gauss(0.0, 1.0);

  SynthData data;
  data.price_buy.resize(config.n_steps);
  data.z_wh.resize(config.n_steps);

  if (config.kind == Kind::Sinusoid) {
    for (std::size_t i = 0; i < config.n_steps; ++i) {
      const double hour = static_cast<double>(i) * config.step_hours;
      // Price peaks in the evening, with a smaller morning shoulder.
      const double daily = std::sin(kTwoPi * (hour - 12.0) / 24.0);
      const double shoulder = 0.35 * std::sin(2.0 * kTwoPi * (hour - 3.0) / 24.0);
      double price = config.price_base + config.price_amp * (daily + shoulder) +
                     config.price_noise * gauss(rng);
      data.price_buy[i] = std::max(price, 0.5);

      const double load = config.load_base_wh +
                          config.load_amp_wh * std::sin(kTwoPi * (hour - 17.0) / 24.0);
      const double sun = std::max(0.0, std::sin(kTwoPi * (hour - 6.0) / 24.0));
      data.z_wh[i] = load - config.solar_peak_wh * sun + config.load_noise_wh * gauss(rng);
    }
  } else {
    double price_dev = 0.0;
    double load_dev = 0.0;
    const double phi = config.ar1_coeff;
    for (std::size_t i = 0; i < config.n_steps; ++i) {
      price_dev = phi * price_dev + config.price_noise * gauss(rng);
      load_dev = phi * load_dev + config.load_noise_wh * gauss(rng);
      data.price_buy[i] = std::max(config.price_base + config.price_amp * price_dev, 0.5);
      data.z_wh[i] = config.load_base_wh + load_dev;
    }
  }
  return data;
}

}  // namespace nemarb::synth
