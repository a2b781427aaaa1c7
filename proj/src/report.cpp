#include "nemarb/report.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <stdexcept>

#include "nemarb/csvio.hpp"

namespace nemarb::io {

namespace {

using nlohmann::json;

std::string format_trimmed(double v) {
  std::ostringstream os;
  os.precision(12);
  os << v;
  return os.str();
}

std::string cell_stem(const SweepCell& cell) {
  return "dispatch_k" + format_trimmed(cell.kappa) + "_c" + format_trimmed(cell.c_rate) +
         (cell.with_load ? "_load" : "_only");
}

json cell_to_json(const SweepCell& cell) {
  json doc;
  doc["kappa"] = cell.kappa;
  doc["c_rate"] = cell.c_rate;
  doc["with_load"] = cell.with_load;
  doc["gains_cents"] = cell.gains;
  doc["cycles"] = cell.cycles;
  if (cell.gains_per_cycle)
    doc["gains_per_cycle"] = *cell.gains_per_cycle;
  else
    doc["gains_per_cycle"] = nullptr;
  return doc;
}

SweepCell cell_from_json(const json& doc) {
  SweepCell cell;
  cell.kappa = doc.at("kappa").get<double>();
  cell.c_rate = doc.at("c_rate").get<double>();
  cell.with_load = doc.at("with_load").get<bool>();
  cell.gains = doc.at("gains_cents").get<double>();
  cell.cycles = doc.at("cycles").get<double>();
  if (!doc.at("gains_per_cycle").is_null())
    cell.gains_per_cycle = doc.at("gains_per_cycle").get<double>();
  return cell;
}

void write_matrix_csv(const std::string& path, const SweepReport& report,
                      const std::function<std::string(const SweepCell&)>& value) {
  std::ofstream os(path);
  if (!os) throw std::runtime_error(path + ": cannot open for writing");
  os << "variant,kappa";
  for (double rate : report.c_rate_grid) os << ",c" << format_trimmed(rate);
  os << "\n";
  auto block = [&](const std::vector<SweepCell>& cells, const char* name) {
    if (cells.empty()) return;
    for (std::size_t ki = 0; ki < report.kappa_grid.size(); ++ki) {
      os << name << ',' << format_trimmed(report.kappa_grid[ki]);
      for (std::size_t ri = 0; ri < report.c_rate_grid.size(); ++ri)
        os << ',' << value(cells[ki * report.c_rate_grid.size() + ri]);
      os << "\n";
    }
  };
  block(report.only_storage, "only_storage");
  block(report.with_load, "with_load");
}

}  // namespace

BatteryParams default_battery() {
  BatteryParams battery;
  battery.b_min_wh = 200.0;
  battery.b_max_wh = 2000.0;
  battery.b0_wh = 1000.0;
  battery.eta_ch = 0.95;
  battery.eta_dis = 0.95;
  battery.eta_fric = 1.0;
  battery.delta_min_w = -500.0;
  battery.delta_max_w = 500.0;
  return battery;
}

RunConfig RunConfig::from_json(const json& doc) {
  RunConfig config;
  config.mode = doc.value("mode", config.mode);
  config.price_csv = doc.value("price_csv", config.price_csv);
  config.load_csv = doc.value("load_csv", config.load_csv);
  config.step_hours = doc.value("step_hours", config.step_hours);
  config.kappa = doc.value("kappa", config.kappa);
  if (doc.contains("battery")) {
    const json& b = doc.at("battery");
    BatteryParams& bat = config.battery;
    bat.b_min_wh = b.value("b_min_wh", bat.b_min_wh);
    bat.b_max_wh = b.value("b_max_wh", bat.b_max_wh);
    bat.b0_wh = b.value("b0_wh", bat.b0_wh);
    bat.eta_ch = b.value("eta_ch", bat.eta_ch);
    bat.eta_dis = b.value("eta_dis", bat.eta_dis);
    bat.eta_fric = b.value("eta_fric", bat.eta_fric);
    if (b.contains("c_rate_charge") || b.contains("c_rate_discharge")) {
      const double xc = b.value("c_rate_charge", 0.25);
      const double yc = b.value("c_rate_discharge", xc);
      const auto [dmax, dmin] = c_rate_to_ramp(xc, yc, bat.b_max_wh);
      bat.delta_max_w = dmax;
      bat.delta_min_w = dmin;
    } else {
      bat.delta_min_w = b.value("delta_min_w", bat.delta_min_w);
      bat.delta_max_w = b.value("delta_max_w", bat.delta_max_w);
    }
    bat.validate();
  }
  config.kappa_grid = doc.value("kappa_grid", config.kappa_grid);
  config.c_rate_grid = doc.value("c_rate_grid", config.c_rate_grid);
  if (doc.contains("mpc")) {
    const json& m = doc.at("mpc");
    config.mpc.n_opt = m.value("n_opt", config.mpc.n_opt);
    config.mpc.refit_every = m.value("refit_every", config.mpc.refit_every);
    config.mpc.train_window = m.value("train_window", config.mpc.train_window);
    if (m.contains("load_model")) {
      config.mpc.load_model.p = m.at("load_model").value("p", config.mpc.load_model.p);
      config.mpc.load_model.q = m.at("load_model").value("q", config.mpc.load_model.q);
    }
    if (m.contains("price_model")) {
      config.mpc.price_model.p = m.at("price_model").value("p", config.mpc.price_model.p);
      config.mpc.price_model.d = m.at("price_model").value("d", config.mpc.price_model.d);
      config.mpc.price_model.q = m.at("price_model").value("q", config.mpc.price_model.q);
    }
    config.mpc_train_steps = m.value("train_steps", config.mpc_train_steps);
  }
  config.out_dir = doc.value("out_dir", config.out_dir);
  config.seed = doc.value("seed", config.seed);
  if (config.kappa_grid.empty() || config.c_rate_grid.empty())
    throw std::invalid_argument("RunConfig: grids must be non-empty");
  for (double k : config.kappa_grid)
    if (k < 0.0 || k > 1.0) throw std::invalid_argument("RunConfig: kappa values must be in [0,1]");
  return config;
}

RunConfig RunConfig::from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error(path + ": cannot open config");
  json doc;
  in >> doc;
  return from_json(doc);
}

json RunConfig::to_json() const {
  json doc;
  doc["mode"] = mode;
  doc["price_csv"] = price_csv;
  doc["load_csv"] = load_csv;
  doc["step_hours"] = step_hours;
  doc["kappa"] = kappa;
  doc["battery"] = {{"b_min_wh", battery.b_min_wh},   {"b_max_wh", battery.b_max_wh},
                    {"b0_wh", battery.b0_wh},         {"eta_ch", battery.eta_ch},
                    {"eta_dis", battery.eta_dis},     {"eta_fric", battery.eta_fric},
                    {"delta_min_w", battery.delta_min_w}, {"delta_max_w", battery.delta_max_w}};
  doc["kappa_grid"] = kappa_grid;
  doc["c_rate_grid"] = c_rate_grid;
  doc["mpc"] = {{"n_opt", mpc.n_opt},
                {"refit_every", mpc.refit_every},
                {"train_window", mpc.train_window},
                {"train_steps", mpc_train_steps},
                {"load_model", {{"p", mpc.load_model.p}, {"q", mpc.load_model.q}}},
                {"price_model",
                 {{"p", mpc.price_model.p}, {"d", mpc.price_model.d}, {"q", mpc.price_model.q}}}};
  doc["out_dir"] = out_dir;
  doc["seed"] = seed;
  return doc;
}

const SweepCell& SweepReport::cell(bool load, std::size_t kappa_idx, std::size_t rate_idx) const {
  const auto& cells = load ? with_load : only_storage;
  return cells.at(kappa_idx * c_rate_grid.size() + rate_idx);
}

SweepCell solve_cell(const TimeGrid& grid, const std::vector<double>& price_buy,
                     const std::vector<double>& z_wh, const BatteryParams& battery,
                     double kappa, double c_rate, bool with_load) {
  BatteryParams cell_battery = battery;
  const auto [dmax, dmin] = c_rate_to_ramp(c_rate, c_rate, battery.b_max_wh);
  cell_battery.delta_max_w = dmax;
  cell_battery.delta_min_w = dmin;
  cell_battery = apply_friction(cell_battery);

  const Scenario scenario(grid, PriceSeries::from_kappa(price_buy, kappa),
                          with_load ? NetLoadSeries(z_wh) : NetLoadSeries::zeros(grid.size()),
                          cell_battery);
  // Cells already run in parallel; keep the inner solver serial.
  lp::SimplexOptions options;
  options.policy = lp::ExecPolicy::Serial;
  const ArbitrageSolution solution = solve_arbitrage(scenario, options);
  const CycleReport cycles = count_cycles(solution.x_star, cell_battery);

  SweepCell cell;
  cell.kappa = kappa;
  cell.c_rate = c_rate;
  cell.with_load = with_load;
  cell.gains = solution.gains;
  cell.cycles = cycles.equivalent_cycles;
  cell.gains_per_cycle = gains_per_cycle(solution.gains, cycles);
  cell.dispatch_wh = solution.x_star;
  cell.trajectory_wh = solution.b_star;
  return cell;
}

SweepReport run_sweep(const RunConfig& config, const TimeGrid& grid,
                      const std::vector<double>& price_buy, const std::vector<double>& z_wh) {
  SweepReport report;
  report.kappa_grid = config.kappa_grid;
  report.c_rate_grid = config.c_rate_grid;
  const bool have_load = !z_wh.empty();

  const std::size_t per_variant = config.kappa_grid.size() * config.c_rate_grid.size();
  const std::size_t total = per_variant * (have_load ? 2 : 1);
  report.only_storage.resize(per_variant);
  if (have_load) report.with_load.resize(per_variant);

  std::string first_error;
#if defined(_OPENMP)
#pragma omp parallel for schedule(dynamic)
#endif
  for (std::ptrdiff_t idx = 0; idx < static_cast<std::ptrdiff_t>(total); ++idx) {
    const std::size_t flat = static_cast<std::size_t>(idx) % per_variant;
    const bool with_load = static_cast<std::size_t>(idx) >= per_variant;
    const std::size_t ki = flat / config.c_rate_grid.size();
    const std::size_t ri = flat % config.c_rate_grid.size();
    try {
      SweepCell cell = solve_cell(grid, price_buy, z_wh, config.battery,
                                  config.kappa_grid[ki], config.c_rate_grid[ri], with_load);
      (with_load ? report.with_load : report.only_storage)[flat] = std::move(cell);
    } catch (const std::exception& e) {
#if defined(_OPENMP)
#pragma omp critical
#endif
      if (first_error.empty()) first_error = e.what();
    }
  }
  if (!first_error.empty()) throw std::runtime_error("run_sweep: " + first_error);
  return report;
}

json sweep_to_json(const SweepReport& report) {
  json doc;
  doc["kappa_grid"] = report.kappa_grid;
  doc["c_rate_grid"] = report.c_rate_grid;
  doc["only_storage"] = json::array();
  for (const SweepCell& cell : report.only_storage) doc["only_storage"].push_back(cell_to_json(cell));
  doc["with_load"] = json::array();
  for (const SweepCell& cell : report.with_load) doc["with_load"].push_back(cell_to_json(cell));
  return doc;
}

SweepReport sweep_from_json(const json& doc) {
  SweepReport report;
  report.kappa_grid = doc.at("kappa_grid").get<std::vector<double>>();
  report.c_rate_grid = doc.at("c_rate_grid").get<std::vector<double>>();
  for (const json& cell : doc.at("only_storage")) report.only_storage.push_back(cell_from_json(cell));
  for (const json& cell : doc.at("with_load")) report.with_load.push_back(cell_from_json(cell));
  return report;
}

void emit_report(const SweepReport& report, const std::string& dir) {
  std::filesystem::create_directories(dir);
  const auto path = [&](const std::string& name) { return dir + "/" + name; };

  write_matrix_csv(path("sweep_gains.csv"), report,
                   [](const SweepCell& c) { return format_trimmed(c.gains); });
  write_matrix_csv(path("sweep_cycles.csv"), report,
                   [](const SweepCell& c) { return format_trimmed(c.cycles); });
  write_matrix_csv(path("sweep_gpc.csv"), report, [](const SweepCell& c) {
    return c.gains_per_cycle ? format_trimmed(*c.gains_per_cycle) : std::string("nan");
  });
  write_text_file(path("summary.json"), sweep_to_json(report).dump(2) + "\n");

  for (const std::vector<SweepCell>* cells : {&report.only_storage, &report.with_load})
    for (const SweepCell& cell : *cells) {
      std::ofstream os(path(cell_stem(cell) + ".csv"));
      os.precision(12);
      os << "step,x_wh,b_wh\n";
      for (std::size_t i = 0; i < cell.dispatch_wh.size(); ++i)
        os << i << ',' << cell.dispatch_wh[i] << ',' << cell.trajectory_wh[i] << '\n';
    }
}

void write_dispatch_csv(const std::string& path, const Scenario& scenario,
                        const ArbitrageSolution& solution) {
  std::ofstream os(path);
  if (!os) throw std::runtime_error(path + ": cannot open for writing");
  os.precision(12);
  os << "step,z_wh,price_buy,price_sell,x_wh,s_wh,b_wh\n";
  for (std::size_t i = 0; i < scenario.size(); ++i)
    os << i << ',' << scenario.netload.z[i] << ',' << scenario.prices.buy[i] << ','
       << scenario.prices.sell[i] << ',' << solution.x_star[i] << ',' << solution.s_star[i]
       << ',' << solution.b_star[i] << '\n';
}

json deterministic_summary(const Scenario& scenario, const ArbitrageSolution& solution) {
  const CycleReport cycles = count_cycles(solution.x_star, scenario.battery);
  json doc;
  doc["mode"] = "deterministic";
  doc["n_steps"] = scenario.size();
  doc["objective_cents"] = solution.objective;
  doc["baseline_cents"] = solution.baseline_cost;
  doc["gains_cents"] = solution.gains;
  doc["cycles"] = cycles.equivalent_cycles;
  const auto gpc = gains_per_cycle(solution.gains, cycles);
  doc["gains_per_cycle"] = gpc ? json(*gpc) : json(nullptr);
  return doc;
}

json mpc_summary(const mpc::MpcTrace& trace, const ArbitrageSolution& clairvoyant) {
  json doc;
  doc["mode"] = "mpc";
  doc["n_steps"] = trace.steps.size();
  doc["realized_cost_cents"] = trace.realized_cost;
  doc["baseline_cents"] = trace.baseline_cost;
  doc["realized_gains_cents"] = trace.gains;
  doc["deterministic_gains_cents"] = clairvoyant.gains;
  doc["cycles"] = trace.cycles.equivalent_cycles;
  doc["incidents"] = trace.incidents;
  return doc;
}

void write_manifest(const RunConfig& config, const std::string& dir) {
  std::filesystem::create_directories(dir);
  json doc;
  doc["artifact"] = "nemarb";
  doc["version"] = "0.1.0";
  doc["config"] = config.to_json();
  json inputs = json::object();
  if (!config.price_csv.empty()) inputs[config.price_csv] = file_checksum(config.price_csv);
  if (!config.load_csv.empty()) inputs[config.load_csv] = file_checksum(config.load_csv);
  doc["input_checksums"] = inputs;
  write_text_file(dir + "/manifest.json", doc.dump(2) + "\n");
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error(path + ": cannot open for writing");
  os << content;
}

}  // namespace nemarb::io
