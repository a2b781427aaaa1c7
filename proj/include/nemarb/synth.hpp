#pragma once

#include <cstdint>
#include <vector>

// Seeded synthetic price / net-load generator so experiments and the
// acceptance suite run without external data.

namespace nemarb::synth {

enum class Kind {
  Sinusoid,  // daily price and load shape plus light noise
  Ar1,       // mean-reverting autoregressive series (forecastable)
};

struct SynthConfig {
  Kind kind = Kind::Sinusoid;
  std::size_t n_steps = 168;
  double step_hours = 1.0;
  std::uint64_t seed = 1;

  double price_base = 10.0;  // cents/kWh
  double price_amp = 5.0;
  double price_noise = 0.3;

  double load_base_wh = 400.0;
  double load_amp_wh = 300.0;
  double solar_peak_wh = 500.0;  // midday generation subtracted from load
  double load_noise_wh = 40.0;

  double ar1_coeff = 0.9;  // Ar1 kind only
};

struct SynthData {
  std::vector<double> price_buy;  // cents/kWh, > 0
  std::vector<double> z_wh;       // net load per step, signed
};

SynthData generate(const SynthConfig& config);

}  // namespace nemarb::synth
