#pragma once

#include "climval/valuation.hpp"

#include <limits>
#include <string>
#include <vector>

namespace climval {

struct SweepSpec {
  std::vector<CarbonScenario> scenarios;
  std::vector<Building> buildings;
  std::vector<EnergyPriceParams> energy_sources;
  RenovationCostParams costs;
  std::vector<double> t_grid;  // calendar years, sorted ascending
  int n_paths = 1;
  std::uint64_t seed = 0;
  int quadrature_points = 1024;
  int steps_per_year = 12;
  bool normalize = false;
  // Re-optimize the renovation date at every valuation date by default;
  // frozen mode keeps the date computed at the first grid point.
  bool frozen_date = false;
  std::string reference_scenario;  // defaults to the first scenario
  // Window for the slowdown statistic; NaN endpoints default to the full grid.
  double slowdown_from = std::numeric_limits<double>::quiet_NaN();
  double slowdown_to = std::numeric_limits<double>::quiet_NaN();

  void validate() const;
  const EnergyPriceParams& energy_for(const std::string& source) const;
};

struct SweepCell {
  double mean = 0.0;
  double ci_lo = 0.0;
  double ci_hi = 0.0;
  double x = 0.0;  // EUR/m^2, deterministic
  // calendar year; equals the valuation date for renovate-now, +inf for never
  double renovation_date = 0.0;
};

struct SweepResult {
  std::vector<std::string> scenario_names;
  std::vector<std::string> building_names;
  std::vector<double> t_grid;
  // cell(s, b, t) layout [scenario][building][t]
  std::vector<std::vector<std::vector<SweepCell>>> cells;
  // percent, per [scenario][building]; NaN where undefined
  std::vector<std::vector<double>> slowdown;

  const SweepCell& cell(std::size_t s, std::size_t b, std::size_t t) const {
    return cells[s][b][t];
  }
};

SweepResult run_sweep(const SweepSpec& spec, const ProductivityParams& econ,
                      const HousingIndexParams& hpi);

// Difference in mean annualized log-growth versus the reference scenario,
// in percent per year, per (scenario, building).
std::vector<std::vector<double>> annual_slowdown(const SweepResult& result,
                                                 const std::string& reference_scenario,
                                                 double t_from, double t_to);

// Writes <dir>/results.csv (fixed column order, 17 significant digits) and
// <dir>/manifest.json with the provided manifest body.
void emit_results(const SweepResult& result, const std::string& dir,
                  const std::string& manifest_json);

// Re-ingests the numeric columns of an emitted CSV (round-trip checks).
struct SweepCsvRow {
  std::string scenario;
  std::string building;
  double t, mean, ci_lo, ci_hi, x, renovation_date, slowdown;
};
std::vector<SweepCsvRow> read_sweep_csv(const std::string& path);

}  // namespace climval
