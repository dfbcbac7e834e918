#include "climval/config.hpp"

#include <json.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace climval {

using nlohmann::json;

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& msg) {
  throw ConfigError(path + ": " + msg);
}

const json& require(const json& j, const char* key, const std::string& path) {
  auto it = j.find(key);
  if (it == j.end()) fail(path + "." + key, "missing required field");
  return *it;
}

double as_number(const json& j, const std::string& path) {
  if (!j.is_number()) fail(path, "expected a number");
  return j.get<double>();
}

Vector as_vector(const json& j, const std::string& path) {
  if (!j.is_array()) fail(path, "expected an array of numbers");
  Vector v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) {
    v(static_cast<Eigen::Index>(i)) = as_number(j[i], path + "[" + std::to_string(i) + "]");
  }
  return v;
}

Matrix as_matrix(const json& j, const std::string& path) {
  if (!j.is_array() || j.empty()) fail(path, "expected an array of rows");
  Matrix m(static_cast<Eigen::Index>(j.size()), static_cast<Eigen::Index>(j[0].size()));
  for (std::size_t r = 0; r < j.size(); ++r) {
    Vector row = as_vector(j[r], path + "[" + std::to_string(r) + "]");
    if (row.size() != m.cols()) fail(path, "ragged matrix rows");
    m.row(static_cast<Eigen::Index>(r)) = row.transpose();
  }
  return m;
}

json vec_to_json(const Vector& v) {
  json a = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(v(i));
  return a;
}

json mat_to_json(const Matrix& m) {
  json a = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) a.push_back(vec_to_json(m.row(r).transpose()));
  return a;
}

ProductivityParams economy_from_json(const json& j, const std::string& path) {
  ProductivityParams p;
  p.mu = as_vector(require(j, "mu", path), path + ".mu");
  p.n_sectors = static_cast<int>(p.mu.size());
  p.gamma = as_matrix(require(j, "gamma", path), path + ".gamma");
  p.sigma = as_matrix(require(j, "sigma", path), path + ".sigma");
  p.varsigma = as_number(require(j, "varsigma", path), path + ".varsigma");
  if (j.contains("a0")) p.a0 = as_vector(j["a0"], path + ".a0");
  if (j.contains("z0_mean")) p.z0_mean = as_vector(j["z0_mean"], path + ".z0_mean");
  if (j.contains("z0_cov")) p.z0_cov = as_matrix(j["z0_cov"], path + ".z0_cov");
  try {
    p.validate();
  } catch (const std::exception& e) {
    fail(path, e.what());
  }
  return p;
}

HousingIndexParams housing_from_json(const json& j, const std::string& path) {
  HousingIndexParams h;
  h.varrho = as_number(require(j, "varrho", path), path + ".varrho");
  h.vartheta = as_number(require(j, "vartheta", path), path + ".vartheta");
  h.nu = as_number(require(j, "nu", path), path + ".nu");
  h.sigma_bar = as_number(require(j, "sigma_bar", path), path + ".sigma_bar");
  if (j.contains("rho")) h.rho = as_vector(j["rho"], path + ".rho");
  if (j.contains("k0")) h.k0 = as_number(j["k0"], path + ".k0");
  if (j.contains("t0_year")) h.t0_year = as_number(j["t0_year"], path + ".t0_year");
  try {
    h.validate();
  } catch (const std::exception& e) {
    fail(path, e.what());
  }
  return h;
}

}  // namespace

SweepSpec RunConfig::make_sweep_spec() const {
  SweepSpec spec;
  spec.scenarios = scenarios;
  spec.buildings = buildings;
  spec.energy_sources = energy_sources;
  spec.costs = costs;
  spec.t_grid = sweep.t_grid;
  spec.n_paths = sweep.n_paths;
  spec.seed = sweep.seed;
  spec.quadrature_points = sweep.quadrature_points;
  spec.steps_per_year = sweep.steps_per_year;
  spec.normalize = sweep.normalize;
  spec.frozen_date = sweep.frozen_date;
  spec.reference_scenario = sweep.reference_scenario;
  spec.slowdown_from = sweep.slowdown_from;
  spec.slowdown_to = sweep.slowdown_to;
  return spec;
}

RunConfig parse_config_json(const std::string& text, const std::string& origin) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(origin + ": JSON parse error: " + e.what());
  }
  // a sweep manifest wraps the configuration under "config"; accept it directly
  if (j.is_object() && j.contains("config") && j["config"].is_object()) {
    j = j["config"];
  }

  RunConfig cfg;
  if (j.contains("economy")) {
    const json& e = j["economy"];
    bool has_csv = e.contains("csv");
    bool has_inline = e.contains("mu");
    if (has_csv == has_inline) {
      fail("economy", "exactly one of inline parameters or 'csv' is required");
    }
    if (has_csv) {
      cfg.productivity_csv = e["csv"].get<std::string>();
      if (!std::filesystem::exists(cfg.productivity_csv)) {
        fail("economy.csv", "file not found: " + cfg.productivity_csv);
      }
    } else {
      cfg.economy = economy_from_json(e, "economy");
    }
  }
  if (j.contains("housing")) {
    const json& h = j["housing"];
    bool has_csv = h.contains("csv");
    bool has_inline = h.contains("nu");
    if (has_csv == has_inline) {
      fail("housing", "exactly one of inline parameters or 'csv' is required");
    }
    if (has_csv) {
      cfg.hpi_csv = h["csv"].get<std::string>();
      if (!std::filesystem::exists(cfg.hpi_csv)) {
        fail("housing.csv", "file not found: " + cfg.hpi_csv);
      }
    } else {
      cfg.housing = housing_from_json(h, "housing");
    }
  }

  if (j.contains("scenarios")) {
    if (j["scenarios"].is_string() && j["scenarios"] == "builtin") {
      cfg.scenarios = scenario_library();
    } else {
      const json& arr = j["scenarios"];
      if (!arr.is_array()) fail("scenarios", "expected an array or \"builtin\"");
      for (std::size_t i = 0; i < arr.size(); ++i) {
        std::string p = "scenarios[" + std::to_string(i) + "]";
        CarbonScenario s;
        s.name = require(arr[i], "name", p).get<std::string>();
        s.t_start_transition = as_number(require(arr[i], "t_start", p), p + ".t_start");
        s.t_end_transition = as_number(require(arr[i], "t_end", p), p + ".t_end");
        s.p_carbon0 = as_number(require(arr[i], "p_carbon0", p), p + ".p_carbon0");
        s.eta_delta = as_number(require(arr[i], "eta_delta", p), p + ".eta_delta");
        try {
          s.validate();
        } catch (const std::exception& e) {
          fail(p, e.what());
        }
        cfg.scenarios.push_back(std::move(s));
      }
    }
  }

  if (j.contains("energy")) {
    const json& arr = j["energy"];
    if (!arr.is_array()) fail("energy", "expected an array");
    for (std::size_t i = 0; i < arr.size(); ++i) {
      std::string p = "energy[" + std::to_string(i) + "]";
      EnergyPriceParams e;
      e.source = require(arr[i], "source", p).get<std::string>();
      e.f1 = as_number(require(arr[i], "f1", p), p + ".f1");
      e.f0 = as_number(require(arr[i], "f0", p), p + ".f0");
      try {
        e.validate();
      } catch (const std::exception& ex) {
        fail(p, ex.what());
      }
      cfg.energy_sources.push_back(std::move(e));
    }
  }

  if (j.contains("renovation")) {
    const json& r = j["renovation"];
    cfg.costs.c0 = as_number(require(r, "c0", "renovation"), "renovation.c0");
    cfg.costs.c1 = as_number(require(r, "c1", "renovation"), "renovation.c1");
    try {
      cfg.costs.validate();
    } catch (const std::exception& e) {
      fail("renovation", e.what());
    }
  }

  if (j.contains("buildings")) {
    const json& arr = j["buildings"];
    if (!arr.is_array()) fail("buildings", "expected an array");
    for (std::size_t i = 0; i < arr.size(); ++i) {
      std::string p = "buildings[" + std::to_string(i) + "]";
      Building b;
      b.name = require(arr[i], "name", p).get<std::string>();
      b.c0_price = as_number(require(arr[i], "c0_price", p), p + ".c0_price");
      b.surface_r = as_number(require(arr[i], "surface", p), p + ".surface");
      b.alpha = as_number(require(arr[i], "alpha", p), p + ".alpha");
      b.alpha_star = as_number(require(arr[i], "alpha_star", p), p + ".alpha_star");
      b.source = require(arr[i], "source", p).get<std::string>();
      if (arr[i].contains("rbar")) b.rbar = as_number(arr[i]["rbar"], p + ".rbar");
      try {
        b.validate();
      } catch (const std::exception& e) {
        fail(p, e.what());
      }
      cfg.buildings.push_back(std::move(b));
    }
  }

  if (j.contains("sweep")) {
    const json& s = j["sweep"];
    if (s.contains("t_grid")) {
      Vector g = as_vector(s["t_grid"], "sweep.t_grid");
      cfg.sweep.t_grid.assign(g.data(), g.data() + g.size());
    } else if (s.contains("t_from") && s.contains("t_to")) {
      double from = as_number(s["t_from"], "sweep.t_from");
      double to = as_number(s["t_to"], "sweep.t_to");
      double step = s.contains("t_step") ? as_number(s["t_step"], "sweep.t_step") : 1.0;
      if (!(step > 0.0) || !(to >= from)) fail("sweep", "invalid t_from/t_to/t_step");
      for (double t = from; t <= to + 1e-9; t += step) cfg.sweep.t_grid.push_back(t);
    }
    if (s.contains("n_paths")) cfg.sweep.n_paths = s["n_paths"].get<int>();
    if (s.contains("seed")) cfg.sweep.seed = s["seed"].get<std::uint64_t>();
    if (s.contains("quadrature_points")) cfg.sweep.quadrature_points = s["quadrature_points"].get<int>();
    if (s.contains("steps_per_year")) cfg.sweep.steps_per_year = s["steps_per_year"].get<int>();
    if (s.contains("normalize")) cfg.sweep.normalize = s["normalize"].get<bool>();
    if (s.contains("frozen_date")) cfg.sweep.frozen_date = s["frozen_date"].get<bool>();
    if (s.contains("reference_scenario")) {
      cfg.sweep.reference_scenario = s["reference_scenario"].get<std::string>();
    }
    if (s.contains("slowdown_window")) {
      Vector w = as_vector(s["slowdown_window"], "sweep.slowdown_window");
      if (w.size() != 2 || !(w(0) < w(1))) {
        fail("sweep.slowdown_window", "expected [from, to] with from < to");
      }
      cfg.sweep.slowdown_from = w(0);
      cfg.sweep.slowdown_to = w(1);
    }
  }

  if (j.contains("output")) {
    const json& o = j["output"];
    if (o.contains("dir")) cfg.output.dir = o["dir"].get<std::string>();
    if (o.contains("format")) cfg.output.format = o["format"].get<std::string>();
  }

  // energy price must stay nonnegative along each scenario's transition window
  for (const auto& e : cfg.energy_sources) {
    for (const auto& s : cfg.scenarios) {
      for (double t = s.t_start_transition; t <= s.t_end_transition + 1e-9; t += 0.25) {
        if (energy_price(e, carbon_price(s, t)) < 0.0) {
          cfg.warnings.push_back("energy source '" + e.source +
                                 "' has a negative price under scenario '" +
                                 s.name + "' during the transition window");
          break;
        }
      }
    }
  }
  return cfg;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config_json(ss.str(), path);
}

std::string config_to_json(const RunConfig& config) {
  json j;
  if (config.economy) {
    const auto& p = *config.economy;
    j["economy"] = {{"mu", vec_to_json(p.mu)},
                    {"gamma", mat_to_json(p.gamma)},
                    {"sigma", mat_to_json(p.sigma)},
                    {"varsigma", p.varsigma}};
    if (p.a0.size()) j["economy"]["a0"] = vec_to_json(p.a0);
    if (p.z0_mean.size()) j["economy"]["z0_mean"] = vec_to_json(p.z0_mean);
    if (p.z0_cov.size()) j["economy"]["z0_cov"] = mat_to_json(p.z0_cov);
  } else if (!config.productivity_csv.empty()) {
    j["economy"] = {{"csv", config.productivity_csv}};
  }
  if (config.housing) {
    const auto& h = *config.housing;
    j["housing"] = {{"varrho", h.varrho},   {"vartheta", h.vartheta},
                    {"nu", h.nu},           {"sigma_bar", h.sigma_bar},
                    {"k0", h.k0},           {"t0_year", h.t0_year}};
    if (h.rho.size()) j["housing"]["rho"] = vec_to_json(h.rho);
  } else if (!config.hpi_csv.empty()) {
    j["housing"] = {{"csv", config.hpi_csv}};
  }
  j["scenarios"] = json::array();
  for (const auto& s : config.scenarios) {
    j["scenarios"].push_back({{"name", s.name},
                              {"t_start", s.t_start_transition},
                              {"t_end", s.t_end_transition},
                              {"p_carbon0", s.p_carbon0},
                              {"eta_delta", s.eta_delta}});
  }
  j["energy"] = json::array();
  for (const auto& e : config.energy_sources) {
    j["energy"].push_back({{"source", e.source}, {"f1", e.f1}, {"f0", e.f0}});
  }
  j["renovation"] = {{"c0", config.costs.c0}, {"c1", config.costs.c1}};
  j["buildings"] = json::array();
  for (const auto& b : config.buildings) {
    j["buildings"].push_back({{"name", b.name},
                              {"c0_price", b.c0_price},
                              {"surface", b.surface_r},
                              {"alpha", b.alpha},
                              {"alpha_star", b.alpha_star},
                              {"source", b.source},
                              {"rbar", b.rbar}});
  }
  j["sweep"] = {{"t_grid", config.sweep.t_grid},
                {"n_paths", config.sweep.n_paths},
                {"seed", config.sweep.seed},
                {"quadrature_points", config.sweep.quadrature_points},
                {"steps_per_year", config.sweep.steps_per_year},
                {"normalize", config.sweep.normalize},
                {"frozen_date", config.sweep.frozen_date},
                {"reference_scenario", config.sweep.reference_scenario}};
  if (!std::isnan(config.sweep.slowdown_from)) {
    j["sweep"]["slowdown_window"] = {config.sweep.slowdown_from,
                                     config.sweep.slowdown_to};
  }
  j["output"] = {{"dir", config.output.dir}, {"format", config.output.format}};
  return j.dump(2);
}

RunConfig builtin_config() {
  RunConfig cfg;

  ProductivityParams econ;
  econ.n_sectors = 4;
  econ.mu = Vector(4);
  econ.mu << 5.602e-3, 8.475e-3, 3.834e-3, 12.099e-3;
  // The published point estimate of the reversion matrix is not
  // Hurwitz-stable; the built-in economy carries the published spectrum on
  // the diagonal instead so the stationarity assumption holds.
  econ.gamma = Matrix::Zero(4, 4);
  econ.gamma.diagonal() << 1.544, 1.057, 0.636, 0.014;
  econ.sigma = Matrix(4, 4);
  econ.sigma << 0.473, 0.013, 0.072, 0.092,
                0.013, 0.208, 0.039, 0.037,
                0.072, 0.039, 0.059, 0.020,
                0.092, 0.037, 0.020, 0.068;
  econ.varsigma = 0.026;
  cfg.economy = econ;

  HousingIndexParams hpi;
  hpi.varrho = 0.024;
  hpi.vartheta = -0.884;
  hpi.nu = 0.026;
  hpi.sigma_bar = 0.050;
  hpi.rho = Vector(4);
  hpi.rho << -0.019, -0.042, -0.017, 0.015;
  hpi.k0 = 0.0;
  hpi.t0_year = 2021.0;
  cfg.housing = hpi;

  cfg.scenarios = scenario_library();
  // pass-through per tonne of CO2; sized so the marginal-saving threshold is
  // crossed inside the transition window for the fast scenarios
  cfg.energy_sources = {{"electricity", 1.3e-5, 0.0}};
  cfg.costs = {0.01, 0.1};

  for (int i = 0; i < 5; ++i) {
    double alphas[] = {320.0, 253.0, 187.0, 120.0, 70.0};
    Building b;
    b.name = "Building " + std::to_string(i + 1);
    b.c0_price = 4000.0;
    b.surface_r = 25.0;
    b.alpha = alphas[i];
    b.alpha_star = 70.0;
    b.source = "electricity";
    b.rbar = 0.05;
    cfg.buildings.push_back(std::move(b));
  }

  for (int y = 2021; y <= 2034; ++y) cfg.sweep.t_grid.push_back(static_cast<double>(y));
  cfg.sweep.n_paths = 10000;
  cfg.sweep.seed = 42;
  cfg.sweep.quadrature_points = 1024;
  cfg.sweep.steps_per_year = 12;
  cfg.sweep.normalize = true;
  cfg.sweep.reference_scenario = "Current Policies";
  // slowdown measured over the pre-renovation phase of the transition, where
  // the energy-cost divergence between scenarios drives the depreciation
  cfg.sweep.slowdown_from = 2021.0;
  cfg.sweep.slowdown_to = 2023.0;
  return cfg;
}

}  // namespace climval
