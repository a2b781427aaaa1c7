#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "nemarb/arbitrage.hpp"
#include "nemarb/core.hpp"
#include "nemarb/cycles.hpp"
#include "nemarb/mpc.hpp"

// Run configuration, the kappa x C-rate sensitivity sweep, and report
// emission (CSV tables, summary.json, manifest.json).

namespace nemarb::io {

/// The reference battery: 200..2000 Wh, 1000 Wh initial, 0.95 efficiencies,
/// +-500 W ramps (0.25C-0.25C).
BatteryParams default_battery();

struct RunConfig {
  std::string mode = "deterministic";  // deterministic | mpc | sweep
  std::string price_csv;
  std::string load_csv;  // empty = only-storage (z == 0)
  double step_hours = 1.0;
  double kappa = 1.0;  // sell = kappa * buy when the CSV has no sell column
  BatteryParams battery = default_battery();
  std::vector<double> kappa_grid{1.0, 0.75, 0.5, 0.25, 0.0};
  std::vector<double> c_rate_grid{0.25, 0.5, 1.0, 2.0};
  mpc::MpcConfig mpc;
  std::size_t mpc_train_steps = 1512;  // leading steps reserved for fitting
  std::string out_dir = "out";
  std::uint64_t seed = 0;

  static RunConfig from_json(const nlohmann::json& doc);
  static RunConfig from_file(const std::string& path);
  nlohmann::json to_json() const;
};

struct SweepCell {
  double kappa = 0.0;
  double c_rate = 0.0;
  bool with_load = false;
  double gains = 0.0;   // cents
  double cycles = 0.0;  // equivalent 100%-DoD
  std::optional<double> gains_per_cycle;
  std::vector<double> dispatch_wh;    // not serialized to JSON; CSV only
  std::vector<double> trajectory_wh;  // idem
};

struct SweepReport {
  std::vector<double> kappa_grid;
  std::vector<double> c_rate_grid;
  std::vector<SweepCell> only_storage;        // kappa-major, then C-rate
  std::vector<SweepCell> with_load;           // empty without load data

  const SweepCell& cell(bool load, std::size_t kappa_idx, std::size_t rate_idx) const;
};

/// Solves one (kappa, C-rate) cell: prices become kappa * buy, ramps come
/// from the C-rate, friction is folded into the efficiencies.
SweepCell solve_cell(const TimeGrid& grid, const std::vector<double>& price_buy,
                     const std::vector<double>& z_wh, const BatteryParams& battery,
                     double kappa, double c_rate, bool with_load);

/// Full grid, cells solved in parallel. z may be empty for only-storage runs.
SweepReport run_sweep(const RunConfig& config, const TimeGrid& grid,
                      const std::vector<double>& price_buy, const std::vector<double>& z_wh);

nlohmann::json sweep_to_json(const SweepReport& report);
SweepReport sweep_from_json(const nlohmann::json& doc);

/// Writes sweep_gains.csv, sweep_cycles.csv, sweep_gpc.csv, summary.json and
/// one dispatch_<cell>.csv per cell into dir (created if needed).
void emit_report(const SweepReport& report, const std::string& dir);

/// Per-step dispatch/trajectory table for a deterministic solve.
void write_dispatch_csv(const std::string& path, const Scenario& scenario,
                        const ArbitrageSolution& solution);

nlohmann::json deterministic_summary(const Scenario& scenario, const ArbitrageSolution& solution);
nlohmann::json mpc_summary(const mpc::MpcTrace& trace, const ArbitrageSolution& clairvoyant);

/// Config echo + input checksums + artifact version, for exact reproduction.
void write_manifest(const RunConfig& config, const std::string& dir);

void write_text_file(const std::string& path, const std::string& content);

}  // namespace nemarb::io
