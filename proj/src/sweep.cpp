#include "climval/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace climval {

void SweepSpec::validate() const {
  if (scenarios.empty()) throw std::invalid_argument("SweepSpec: empty scenario list");
  if (buildings.empty()) throw std::invalid_argument("SweepSpec: empty building list");
  if (n_paths < 1) throw std::invalid_argument("SweepSpec: n_paths must be >= 1");
  if (quadrature_points < 1) throw std::invalid_argument("SweepSpec: quadrature_points must be >= 1");
  if (steps_per_year < 1) throw std::invalid_argument("SweepSpec: steps_per_year must be >= 1");
  if (t_grid.empty()) throw std::invalid_argument("SweepSpec: empty t_grid");
  if (!std::is_sorted(t_grid.begin(), t_grid.end())) {
    throw std::invalid_argument("SweepSpec: t_grid must be sorted ascending");
  }
  for (const auto& s : scenarios) s.validate();
  for (const auto& b : buildings) {
    b.validate();
    energy_for(b.source);  // throws on unknown source
  }
  costs.validate();
}

const EnergyPriceParams& SweepSpec::energy_for(const std::string& source) const {
  for (const auto& e : energy_sources) {
    if (e.source == source) return e;
  }
  throw std::invalid_argument("SweepSpec: unknown energy source '" + source + "'");
}

SweepResult run_sweep(const SweepSpec& spec, const ProductivityParams& econ,
                      const HousingIndexParams& hpi) {
  spec.validate();
  econ.validate();
  hpi.validate();

  const double t0 = hpi.t0_year;
  const double t_end = std::max(spec.t_grid.back(), t0 + 1.0 / spec.steps_per_year);
  const int n_steps = std::max(
      1, static_cast<int>(std::lround((t_end - t0) * spec.steps_per_year)));

  ZSimulation zsim = simulate_z(econ, t0, t_end, n_steps, spec.n_paths, spec.seed);
  // all buildings share the same log-index paths; simulate once and scale
  HousingPaths housing = efficient_value_paths(hpi, spec.buildings.front(), zsim, spec.seed);

  // normalization by the most efficient building (minimum alpha, first wins)
  double norm = 1.0;
  if (spec.normalize) {
    std::size_t best = 0;
    for (std::size_t b = 1; b < spec.buildings.size(); ++b) {
      if (spec.buildings[b].alpha < spec.buildings[best].alpha) best = b;
    }
    const Building& eb = spec.buildings[best];
    norm = eb.surface_r * eb.c0_price * std::exp(hpi.k0);
  }

  SweepResult result;
  result.t_grid = spec.t_grid;
  for (const auto& s : spec.scenarios) result.scenario_names.push_back(s.name);
  for (const auto& b : spec.buildings) result.building_names.push_back(b.name);
  result.cells.resize(spec.scenarios.size());

  for (std::size_t si = 0; si < spec.scenarios.size(); ++si) {
    const CarbonScenario& scenario = spec.scenarios[si];
    result.cells[si].resize(spec.buildings.size());
    for (std::size_t bi = 0; bi < spec.buildings.size(); ++bi) {
      const Building& building = spec.buildings[bi];
      const EnergyPriceParams& energy = spec.energy_for(building.source);
      const double scale = building.surface_r * building.c0_price;
      auto& row = result.cells[si][bi];
      row.resize(spec.t_grid.size());

      RenovationDecision frozen;
      if (spec.frozen_date) {
        frozen = optimal_renovation_date(building, scenario, energy, spec.costs,
                                         spec.t_grid.front());
      }

      for (std::size_t ti = 0; ti < spec.t_grid.size(); ++ti) {
        const double t = spec.t_grid[ti];
        RenovationDecision dec =
            spec.frozen_date
                ? frozen
                : optimal_renovation_date(building, scenario, energy, spec.costs, t);
        double x;
        if (spec.frozen_date && dec.kind == RenovationDecision::Kind::RenovateAt &&
            dec.date <= t) {
          // renovation already happened under the frozen policy
          x = renovation_cost(spec.costs, building.alpha, building.alpha_star);
        } else {
          x = transition_cost_x(building, scenario, energy, spec.costs, t,
                                spec.quadrature_points);
        }

        int node = housing.node_index(t);
        double sum = 0.0, sum2 = 0.0;
        for (int p = 0; p < spec.n_paths; ++p) {
          double v = scale * std::exp(housing.k[p][node]) - building.surface_r * x;
          sum += v;
          sum2 += v * v;
        }
        double mean = sum / spec.n_paths;
        double var = spec.n_paths > 1
                         ? std::max(0.0, (sum2 - sum * sum / spec.n_paths) /
                                             (spec.n_paths - 1))
                         : 0.0;
        double half = 1.959963984540054 * std::sqrt(var / spec.n_paths);

        SweepCell& cell = row[ti];
        cell.mean = mean / norm;
        cell.ci_lo = (mean - half) / norm;
        cell.ci_hi = (mean + half) / norm;
        cell.x = x;
        switch (dec.kind) {
          case RenovationDecision::Kind::RenovateNow:
            cell.renovation_date = t;
            break;
          case RenovationDecision::Kind::RenovateAt:
            cell.renovation_date = dec.date;
            break;
          case RenovationDecision::Kind::Never:
            cell.renovation_date = std::numeric_limits<double>::infinity();
            break;
        }
      }
    }
  }

  std::string ref = spec.reference_scenario.empty() ? spec.scenarios.front().name
                                                    : spec.reference_scenario;
  double sd_from = std::isnan(spec.slowdown_from) ? spec.t_grid.front() : spec.slowdown_from;
  double sd_to = std::isnan(spec.slowdown_to) ? spec.t_grid.back() : spec.slowdown_to;
  if (spec.t_grid.size() < 2) {
    result.slowdown.assign(spec.scenarios.size(),
                           std::vector<double>(spec.buildings.size(),
                                               std::numeric_limits<double>::quiet_NaN()));
  } else {
    result.slowdown = annual_slowdown(result, ref, sd_from, sd_to);
  }
  return result;
}

std::vector<std::vector<double>> annual_slowdown(const SweepResult& result,
                                                 const std::string& reference_scenario,
                                                 double t_from, double t_to) {
  auto find_t = [&](double t) {
    for (std::size_t i = 0; i < result.t_grid.size(); ++i) {
      if (std::abs(result.t_grid[i] - t) < 1e-9) return i;
    }
    throw std::invalid_argument("annual_slowdown: time not on the result grid");
  };
  std::size_t ref = result.scenario_names.size();
  for (std::size_t s = 0; s < result.scenario_names.size(); ++s) {
    if (result.scenario_names[s] == reference_scenario) ref = s;
  }
  if (ref == result.scenario_names.size()) {
    throw std::invalid_argument("annual_slowdown: unknown reference scenario '" +
                                reference_scenario + "'");
  }
  const std::size_t i_from = find_t(t_from);
  const std::size_t i_to = find_t(t_to);
  if (i_to <= i_from) throw std::invalid_argument("annual_slowdown: t_to must exceed t_from");
  const double span = t_to - t_from;

  const double nan = std::numeric_limits<double>::quiet_NaN();
  std::vector<std::vector<double>> table(
      result.scenario_names.size(),
      std::vector<double>(result.building_names.size(), nan));
  for (std::size_t b = 0; b < result.building_names.size(); ++b) {
    for (std::size_t s = 0; s < result.scenario_names.size(); ++s) {
      double m0 = result.cell(s, b, i_from).mean;
      double m1 = result.cell(s, b, i_to).mean;
      double r0 = result.cell(ref, b, i_from).mean;
      double r1 = result.cell(ref, b, i_to).mean;
      if (m0 <= 0.0 || m1 <= 0.0 || r0 <= 0.0 || r1 <= 0.0) continue;  // undefined
      double g = (std::log(m1) - std::log(m0)) / span;
      double g_ref = (std::log(r1) - std::log(r0)) / span;
      table[s][b] = (std::exp(g - g_ref) - 1.0) * 100.0;
    }
  }
  return table;
}

namespace {

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace

void emit_results(const SweepResult& result, const std::string& dir,
                  const std::string& manifest_json) {
  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw std::runtime_error("cannot create output directory " + dir + ": " + ec.message());

  const std::string csv_path = (fs::path(dir) / "results.csv").string();
  std::ofstream csv(csv_path);
  if (!csv) throw std::runtime_error("cannot write " + csv_path);
  csv << "scenario,building,t,mean,ci_lo,ci_hi,x,renovation_date,slowdown\n";
  for (std::size_t s = 0; s < result.scenario_names.size(); ++s) {
    for (std::size_t b = 0; b < result.building_names.size(); ++b) {
      for (std::size_t t = 0; t < result.t_grid.size(); ++t) {
        const SweepCell& c = result.cell(s, b, t);
        csv << result.scenario_names[s] << ',' << result.building_names[b] << ','
            << fmt17(result.t_grid[t]) << ',' << fmt17(c.mean) << ','
            << fmt17(c.ci_lo) << ',' << fmt17(c.ci_hi) << ',' << fmt17(c.x)
            << ',' << fmt17(c.renovation_date) << ','
            << fmt17(result.slowdown[s][b]) << '\n';
      }
    }
  }
  if (!csv) throw std::runtime_error("I/O failure while writing " + csv_path);
  csv.close();

  const std::string manifest_path = (fs::path(dir) / "manifest.json").string();
  std::ofstream mf(manifest_path);
  if (!mf) throw std::runtime_error("cannot write " + manifest_path);
  mf << manifest_json;
  if (!mf) throw std::runtime_error("I/O failure while writing " + manifest_path);
}

std::vector<SweepCsvRow> read_sweep_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::string line;
  std::getline(in, line);  // header
  std::vector<SweepCsvRow> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::stringstream ss(line);
    SweepCsvRow row;
    std::string cell;
    std::getline(ss, row.scenario, ',');
    std::getline(ss, row.building, ',');
    double* fields[] = {&row.t,  &row.mean,            &row.ci_lo,   &row.ci_hi,
                        &row.x,  &row.renovation_date, &row.slowdown};
    for (double* f : fields) {
      if (!std::getline(ss, cell, ',')) throw std::runtime_error(path + ": short row");
      *f = std::strtod(cell.c_str(), nullptr);
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace climval
