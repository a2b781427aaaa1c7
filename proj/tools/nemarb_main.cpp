// Command-line front end: deterministic solves, MPC runs, kappa x C-rate
// sweeps and a synthetic-data generator.

#include <cstdio>
#include <exception>
#include <filesystem>
#include <fstream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "nemarb/arbitrage.hpp"
#include "nemarb/core.hpp"
#include "nemarb/csvio.hpp"
#include "nemarb/cycles.hpp"
#include "nemarb/mpc.hpp"
#include "nemarb/report.hpp"
#include "nemarb/synth.hpp"

namespace {

using namespace nemarb;

struct LoadedInputs {
  TimeGrid grid;
  PriceSeries prices;
  NetLoadSeries netload;
};

LoadedInputs load_inputs(const io::RunConfig& config) {
  if (config.price_csv.empty())
    throw std::runtime_error("a price CSV is required (config key price_csv)");
  const io::PriceTable price = io::read_price_csv(config.price_csv, config.step_hours);

  TimeGrid grid = price.duration_h ? TimeGrid(*price.duration_h)
                                   : TimeGrid::uniform(price.buy.size(), config.step_hours);

  PriceSeries prices = price.sell ? PriceSeries(price.buy, *price.sell)
                                  : PriceSeries::from_kappa(price.buy, config.kappa);

  std::vector<double> z(grid.size(), 0.0);
  if (!config.load_csv.empty()) {
    const io::LoadTable load = io::read_load_csv(config.load_csv, config.step_hours);
    if (load.z_wh.size() != grid.size())
      throw std::runtime_error("price and load files disagree on the number of steps");
    z = load.z_wh;
  }
  return {std::move(grid), std::move(prices), NetLoadSeries(std::move(z))};
}

int run_deterministic(const io::RunConfig& config) {
  LoadedInputs in = load_inputs(config);
  const Scenario scenario(in.grid, in.prices, in.netload, apply_friction(config.battery));
  const ArbitrageSolution solution = solve_arbitrage(scenario);

  std::filesystem::create_directories(config.out_dir);
  io::write_dispatch_csv(config.out_dir + "/dispatch.csv", scenario, solution);
  io::write_text_file(config.out_dir + "/summary.json",
                      io::deterministic_summary(scenario, solution).dump(2) + "\n");
  io::write_manifest(config, config.out_dir);
  std::printf("deterministic: %zu steps, gains %.6f cents (baseline %.6f)\n", scenario.size(),
              solution.gains, solution.baseline_cost);
  return 0;
}

int run_mpc_mode(const io::RunConfig& config) {
  LoadedInputs in = load_inputs(config);
  const std::size_t train = config.mpc_train_steps;
  if (in.grid.size() <= train + 1)
    throw std::runtime_error("not enough rows after the training window (train_steps = " +
                             std::to_string(train) + ")");

  const std::vector<double> hist_z(in.netload.z.begin(), in.netload.z.begin() + train);
  const std::vector<double> hist_p(in.prices.buy.begin(), in.prices.buy.begin() + train);

  std::vector<double> hours, buy, sell, z;
  for (std::size_t i = train; i < in.grid.size(); ++i) {
    hours.push_back(in.grid.step_hours(i));
    buy.push_back(in.prices.buy[i]);
    sell.push_back(in.prices.sell[i]);
    z.push_back(in.netload.z[i]);
  }
  const Scenario actuals(TimeGrid(hours), PriceSeries(buy, sell), NetLoadSeries(z),
                         apply_friction(config.battery));

  mpc::MpcConfig mpc_config = config.mpc;
  mpc_config.train_window = std::min(mpc_config.train_window, train);
  mpc::ArmaForecaster forecaster(hist_z, hist_p, mpc_config);
  const mpc::MpcTrace trace = run_mpc(actuals, mpc_config, forecaster);
  const ArbitrageSolution clairvoyant = solve_arbitrage(actuals);

  std::filesystem::create_directories(config.out_dir);
  {
    std::ofstream os(config.out_dir + "/mpc_trace.csv");
    trace.write_csv(os);
  }
  io::write_text_file(config.out_dir + "/summary.json",
                      io::mpc_summary(trace, clairvoyant).dump(2) + "\n");
  io::write_manifest(config, config.out_dir);
  std::printf("mpc: %zu steps, realized gains %.6f cents (clairvoyant %.6f, incidents %d)\n",
              trace.steps.size(), trace.gains, clairvoyant.gains, trace.incidents);
  return 0;
}

int run_sweep_mode(const io::RunConfig& config) {
  LoadedInputs in = load_inputs(config);
  const std::vector<double> z = config.load_csv.empty() ? std::vector<double>{} : in.netload.z;
  const io::SweepReport report = io::run_sweep(config, in.grid, in.prices.buy, z);
  io::emit_report(report, config.out_dir);
  io::write_manifest(config, config.out_dir);
  std::printf("sweep: %zu kappa x %zu C-rate cells%s written to %s\n",
              report.kappa_grid.size(), report.c_rate_grid.size(),
              report.with_load.empty() ? "" : " (with and without load)",
              config.out_dir.c_str());
  return 0;
}

int run_generate(const std::string& out_dir, std::size_t days, double step_hours,
                 const std::string& kind, std::uint64_t seed) {
  synth::SynthConfig gen;
  gen.kind = kind == "ar1" ? synth::Kind::Ar1 : synth::Kind::Sinusoid;
  gen.step_hours = step_hours;
  gen.n_steps = static_cast<std::size_t>(static_cast<double>(days) * 24.0 / step_hours);
  gen.seed = seed;
  const synth::SynthData data = synth::generate(gen);

  std::filesystem::create_directories(out_dir);
  const std::int64_t start = io::parse_iso8601("2019-06-01T00:00:00");
  io::write_price_csv(out_dir + "/price.csv", start, step_hours, data.price_buy);
  io::write_load_csv(out_dir + "/load.csv", start, step_hours, data.z_wh);
  std::printf("generated %zu steps of %s data into %s\n", gen.n_steps, kind.c_str(),
              out_dir.c_str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"optimal energy-storage arbitrage under net-metering"};
  app.require_subcommand(0, 1);

  std::string mode;
  std::string config_path;
  std::string out_dir;
  std::optional<std::uint64_t> seed;
  std::vector<double> kappa_list;
  std::vector<double> c_rate_list;
  app.add_option("--mode", mode, "deterministic | mpc | sweep");
  app.add_option("--config", config_path, "JSON run configuration");
  app.add_option("--out", out_dir, "output directory");
  app.add_option("--seed", seed, "random seed recorded in the manifest");
  app.add_option("--kappa", kappa_list, "kappa grid override (comma separated)")
      ->delimiter(',');
  app.add_option("--c-rates", c_rate_list, "C-rate grid override (comma separated)")
      ->delimiter(',');

  CLI::App* gen = app.add_subcommand("gen", "write synthetic price.csv and load.csv");
  std::string gen_dir = "data";
  std::size_t gen_days = 21;
  double gen_step_hours = 1.0;
  std::string gen_kind = "sine";
  std::uint64_t gen_seed = 1;
  gen->add_option("--out-dir", gen_dir, "destination directory");
  gen->add_option("--days", gen_days, "number of days");
  gen->add_option("--step-hours", gen_step_hours, "step duration in hours");
  gen->add_option("--kind", gen_kind, "sine | ar1")
      ->check(CLI::IsMember({"sine", "ar1"}));
  gen->add_option("--seed", gen_seed, "generator seed");

  CLI11_PARSE(app, argc, argv);

  try {
    if (gen->parsed()) return run_generate(gen_dir, gen_days, gen_step_hours, gen_kind, gen_seed);

    io::RunConfig config =
        config_path.empty() ? io::RunConfig{} : io::RunConfig::from_file(config_path);
    if (!mode.empty()) config.mode = mode;
    if (!out_dir.empty()) config.out_dir = out_dir;
    if (seed) config.seed = *seed;
    if (!kappa_list.empty()) {
      config.kappa_grid = kappa_list;
      if (kappa_list.size() == 1) config.kappa = kappa_list.front();
    }
    if (!c_rate_list.empty()) config.c_rate_grid = c_rate_list;

    if (config.mode == "deterministic") return run_deterministic(config);
    if (config.mode == "mpc") return run_mpc_mode(config);
    if (config.mode == "sweep") return run_sweep_mode(config);
    throw std::runtime_error("unknown mode '" + config.mode + "'");
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
}
