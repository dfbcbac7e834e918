#include "climval/calibration.hpp"
#include "climval/config.hpp"
#include "climval/sweep.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>

namespace fs = std::filesystem;
using nlohmann::json;
using namespace climval;

namespace {

constexpr const char* kVersion = "0.1.0";

constexpr int kExitOk = 0;
constexpr int kExitUser = 2;
constexpr int kExitNumerical = 3;

struct GlobalOpts {
  std::string config_path;
  std::string out_dir;
  std::optional<std::uint64_t> seed;
  std::optional<int> n_paths;
  bool quiet = false;
};

RunConfig load_effective_config(const GlobalOpts& g) {
  RunConfig cfg = (g.config_path.empty() || g.config_path == "builtin")
                      ? builtin_config()
                      : load_config(g.config_path);
  if (g.seed) cfg.sweep.seed = *g.seed;
  if (g.n_paths) cfg.sweep.n_paths = *g.n_paths;
  if (!g.out_dir.empty()) cfg.output.dir = g.out_dir;
  return cfg;
}

void print_warnings(const RunConfig& cfg, const GlobalOpts& g) {
  if (g.quiet) return;
  for (const auto& w : cfg.warnings) std::cerr << "warning: " << w << "\n";
}

json vec_json(const Vector& v) {
  json a = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(v(i));
  return a;
}

json mat_json(const Matrix& m) {
  json a = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) a.push_back(vec_json(m.row(r).transpose()));
  return a;
}

int cmd_calibrate(const GlobalOpts& g) {
  RunConfig cfg = load_effective_config(g);
  print_warnings(cfg, g);
  if (cfg.productivity_csv.empty() && cfg.hpi_csv.empty()) {
    std::cerr << "calibrate: config references no productivity or HPI CSV\n";
    return kExitUser;
  }

  json report;
  report["version"] = kVersion;
  std::optional<ProductivityEstimate> prod;
  if (!cfg.productivity_csv.empty()) {
    TimeSeries theta = read_series_csv(cfg.productivity_csv);
    prod = estimate_productivity(theta);
    json p;
    p["mu_hat"] = vec_json(prod->mu_hat);
    p["varsigma_hat"] = prod->varsigma_hat;
    p["var_ok"] = prod->var_ok;
    if (prod->var_ok) {
      p["gamma_hat"] = mat_json(prod->gamma_hat);
      p["sigma_hat"] = mat_json(prod->sigma_hat);
    } else {
      p["var_error"] = prod->var_error;
    }
    report["productivity"] = p;
  }
  if (!cfg.hpi_csv.empty()) {
    TimeSeries raw = read_series_csv(cfg.hpi_csv);
    TimeSeries k = rebase_log(raw);
    HpiTrend trend = estimate_hpi_trend(k);
    HpiDynamics dyn = estimate_hpi_dynamics(k, trend);
    json h;
    h["varrho_hat"] = trend.varrho_hat;
    h["vartheta_hat"] = trend.vartheta_hat;
    h["nu_hat"] = dyn.nu_hat;
    h["sigma_bar_hat"] = dyn.sigma_bar_hat;
    if (prod && prod->var_ok && dyn.sigma_bar_hat > 0.0) {
      RhoEstimate rho = estimate_rho(k, trend, dyn, *prod);
      h["rho_hat"] = vec_json(rho.rho_hat);
      h["rho_clamped"] = rho.clamped;
    }
    report["housing"] = h;
  }

  fs::create_directories(cfg.output.dir);
  std::string path = (fs::path(cfg.output.dir) / "calibration.json").string();
  std::ofstream out(path);
  out << report.dump(2) << "\n";
  if (!out) {
    std::cerr << "calibrate: cannot write " << path << "\n";
    return kExitNumerical;
  }
  if (!g.quiet) std::cout << "calibration report written to " << path << "\n";
  return kExitOk;
}

int cmd_simulate_economy(const GlobalOpts& g, int years, int samples_per_year) {
  RunConfig cfg = load_effective_config(g);
  print_warnings(cfg, g);
  if (!cfg.economy || !cfg.housing) {
    std::cerr << "simulate-economy: config must carry inline economy and housing parameters\n";
    return kExitUser;
  }
  const ProductivityParams& econ = *cfg.economy;
  const HousingIndexParams& hpi = *cfg.housing;

  double t0 = hpi.t0_year - years;
  int steps = years * samples_per_year;
  ZSimulation zsim = simulate_z(econ, t0, hpi.t0_year, steps, 1, cfg.sweep.seed);

  TimeSeries theta;
  theta.t0 = t0;
  theta.t1 = hpi.t0_year;
  for (const auto& z : zsim.paths[0].values) {
    theta.values.push_back(econ.mu + econ.varsigma * z);
  }

  // index path with the base at the end of the sample
  HousingIndexParams sim_h = hpi;
  sim_h.t0_year = t0;
  sim_h.k0 = 0.0;
  Building unit;
  unit.name = "unit";
  unit.c0_price = 1.0;
  unit.surface_r = 1.0;
  unit.alpha = unit.alpha_star = 0.0;
  HousingPaths paths = efficient_value_paths(sim_h, unit, zsim, cfg.sweep.seed);
  TimeSeries hpi_series;
  hpi_series.t0 = t0;
  hpi_series.t1 = hpi.t0_year;
  double k_last = paths.k[0].back();
  for (double k : paths.k[0]) {
    Vector v(1);
    v(0) = std::exp(k - k_last) * 100.0;  // rebased to 100 at the final year
    hpi_series.values.push_back(v);
  }

  fs::create_directories(cfg.output.dir);
  std::string ppath = (fs::path(cfg.output.dir) / "productivity.csv").string();
  std::string hpath = (fs::path(cfg.output.dir) / "hpi.csv").string();
  write_series_csv(ppath, theta);
  write_series_csv(hpath, hpi_series);
  if (!g.quiet) {
    std::cout << "wrote " << ppath << " and " << hpath << "\n";
  }
  return kExitOk;
}

int find_named(const std::vector<std::string>& names, const std::string& wanted,
               const char* what) {
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (names[i] == wanted) return static_cast<int>(i);
  }
  std::cerr << "unknown " << what << " '" << wanted << "'; available:";
  for (const auto& n : names) std::cerr << " '" << n << "'";
  std::cerr << "\n";
  return -1;
}

int cmd_renovation_date(const GlobalOpts& g, const std::string& scenario_name,
                        const std::string& building_name, double at_year) {
  RunConfig cfg = load_effective_config(g);
  print_warnings(cfg, g);
  std::vector<std::string> snames, bnames;
  for (const auto& s : cfg.scenarios) snames.push_back(s.name);
  for (const auto& b : cfg.buildings) bnames.push_back(b.name);
  int si = find_named(snames, scenario_name, "scenario");
  int bi = find_named(bnames, building_name, "building");
  if (si < 0 || bi < 0) return kExitUser;

  const CarbonScenario& scenario = cfg.scenarios[si];
  const Building& building = cfg.buildings[bi];
  SweepSpec spec = cfg.make_sweep_spec();
  const EnergyPriceParams& energy = spec.energy_for(building.source);
  double t = std::isnan(at_year) ? scenario.t_start_transition : at_year;

  RenovationDecision dec =
      optimal_renovation_date(building, scenario, energy, cfg.costs, t);
  std::cout.precision(9);
  switch (dec.kind) {
    case RenovationDecision::Kind::RenovateNow:
      std::cout << "now\n";
      break;
    case RenovationDecision::Kind::Never:
      std::cout << "never\n";
      break;
    case RenovationDecision::Kind::RenovateAt:
      std::cout << "renovate_at " << std::fixed
                << (dec.date - scenario.t_start_transition) << " (year "
                << dec.date << ")\n";
      break;
  }
  return kExitOk;
}

int cmd_valuate(const GlobalOpts& g, const std::string& scenario_name,
                const std::string& building_name, double at_year) {
  RunConfig cfg = load_effective_config(g);
  print_warnings(cfg, g);
  std::vector<std::string> snames, bnames;
  for (const auto& s : cfg.scenarios) snames.push_back(s.name);
  for (const auto& b : cfg.buildings) bnames.push_back(b.name);
  int si = find_named(snames, scenario_name, "scenario");
  int bi = find_named(bnames, building_name, "building");
  if (si < 0 || bi < 0) return kExitUser;
  if (!cfg.economy || !cfg.housing) {
    std::cerr << "valuate: config must carry inline economy and housing parameters\n";
    return kExitUser;
  }

  SweepSpec spec = cfg.make_sweep_spec();
  spec.scenarios = {cfg.scenarios[si]};
  spec.buildings = {cfg.buildings[bi]};
  spec.reference_scenario = cfg.scenarios[si].name;
  double t = std::isnan(at_year) ? spec.t_grid.front() : at_year;
  spec.t_grid = {spec.t_grid.front(), std::max(t, spec.t_grid.front() + 1.0)};
  if (t > spec.t_grid.front()) spec.t_grid.back() = t;
  spec.normalize = false;

  SweepResult res = run_sweep(spec, *cfg.economy, *cfg.housing);
  std::size_t ti = res.t_grid.size() - 1;
  if (std::abs(res.t_grid.front() - t) < 1e-9) ti = 0;
  const SweepCell& cell = res.cell(0, 0, ti);
  std::cout.precision(6);
  std::cout << std::fixed
            << "scenario            " << scenario_name << "\n"
            << "building            " << building_name << "\n"
            << "valuation year      " << t << "\n"
            << "transition cost X   " << cell.x << " EUR/m^2\n"
            << "mean adjusted value " << cell.mean << " EUR  (95% CI ["
            << cell.ci_lo << ", " << cell.ci_hi << "])\n";
  return kExitOk;
}

int cmd_sweep(const GlobalOpts& g) {
  RunConfig cfg = load_effective_config(g);
  print_warnings(cfg, g);
  if (!cfg.economy || !cfg.housing) {
    std::cerr << "sweep: config must carry inline economy and housing parameters "
                 "(run calibrate first and inline the estimates)\n";
    return kExitUser;
  }
  SweepSpec spec = cfg.make_sweep_spec();
  try {
    SweepResult result = run_sweep(spec, *cfg.economy, *cfg.housing);
    json manifest;
    manifest["tool"] = "climval";
    manifest["version"] = kVersion;
    manifest["config"] = json::parse(config_to_json(cfg));
    emit_results(result, cfg.output.dir, manifest.dump(2) + "\n");
  } catch (...) {
    // remove partial outputs
    std::error_code ec;
    fs::remove(fs::path(cfg.output.dir) / "results.csv", ec);
    fs::remove(fs::path(cfg.output.dir) / "manifest.json", ec);
    throw;
  }
  if (!g.quiet) {
    std::cout << "sweep results written to " << cfg.output.dir << "/results.csv\n";
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Valuation of energy-inefficient real estate under carbon-price transition scenarios"};
  app.require_subcommand(1);

  GlobalOpts g;
  app.add_option("--config", g.config_path, "Config file path, or 'builtin'");
  app.add_option("--out", g.out_dir, "Output directory override");
  std::uint64_t seed_opt = 0;
  int paths_opt = 0;
  auto* seed_flag = app.add_option("--seed", seed_opt, "RNG seed override");
  auto* paths_flag = app.add_option("--paths", paths_opt, "Monte Carlo path count override");
  app.add_flag("--quiet", g.quiet, "Suppress non-essential output");

  auto* calibrate = app.add_subcommand("calibrate", "Estimate model parameters from CSV series");
  auto* simulate = app.add_subcommand("simulate-economy", "Generate synthetic productivity and HPI CSVs");
  int years = 44, samples_per_year = 1;
  simulate->add_option("--years", years, "Sample length in years");
  simulate->add_option("--samples-per-year", samples_per_year, "Sampling frequency");
  auto* renov = app.add_subcommand("renovation-date", "Print the optimal renovation date");
  auto* valuate = app.add_subcommand("valuate", "Value one building under one scenario");
  auto* sweep = app.add_subcommand("sweep", "Run the full scenario-building sweep");
  std::string scenario_name, building_name;
  double at_year = std::numeric_limits<double>::quiet_NaN();
  for (auto* cmd : {renov, valuate}) {
    cmd->add_option("--scenario", scenario_name, "Scenario name")->required();
    cmd->add_option("--building", building_name, "Building name")->required();
    cmd->add_option("--at", at_year, "Valuation year (default: transition start)");
  }

  for (auto* cmd : app.get_subcommands({})) cmd->fallthrough();

  CLI11_PARSE(app, argc, argv);
  if (seed_flag->count()) g.seed = seed_opt;
  if (paths_flag->count()) g.n_paths = paths_opt;

  try {
    if (calibrate->parsed()) return cmd_calibrate(g);
    if (simulate->parsed()) return cmd_simulate_economy(g, years, samples_per_year);
    if (renov->parsed()) return cmd_renovation_date(g, scenario_name, building_name, at_year);
    if (valuate->parsed()) return cmd_valuate(g, scenario_name, building_name, at_year);
    if (sweep->parsed()) return cmd_sweep(g);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitUser;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUser;
  } catch (const std::exception& e) {
    std::cerr << "numerical error: " << e.what() << "\n";
    return kExitNumerical;
  }
  return kExitUser;
}
