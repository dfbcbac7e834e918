#pragma once

#include "climval/sweep.hpp"

#include <optional>
#include <string>
#include <vector>

namespace climval {

// Raised for malformed configs; message carries the offending field path.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  // exactly one of inline params / CSV path per calibratable section
  std::optional<ProductivityParams> economy;
  std::string productivity_csv;
  std::optional<HousingIndexParams> housing;
  std::string hpi_csv;

  std::vector<CarbonScenario> scenarios;
  std::vector<EnergyPriceParams> energy_sources;
  RenovationCostParams costs{0.01, 0.1};
  std::vector<Building> buildings;

  struct SweepSection {
    std::vector<double> t_grid;
    int n_paths = 10000;
    std::uint64_t seed = 42;
    int quadrature_points = 1024;
    int steps_per_year = 12;
    bool normalize = true;
    bool frozen_date = false;
    std::string reference_scenario;
    double slowdown_from = std::numeric_limits<double>::quiet_NaN();
    double slowdown_to = std::numeric_limits<double>::quiet_NaN();
  } sweep;

  struct OutputSection {
    std::string dir = "out";
    std::string format = "csv";
  } output;

  std::vector<std::string> warnings;  // filled during validation

  SweepSpec make_sweep_spec() const;
};

// Parses and validates; throws ConfigError with a field-path diagnostic.
RunConfig load_config(const std::string& path);

RunConfig parse_config_json(const std::string& text, const std::string& origin = "<inline>");

// Serializes the full configuration (the sweep manifest body).
std::string config_to_json(const RunConfig& config);

// The built-in French setup: four NGFS scenarios, five buildings, published
// housing-index parameters.
RunConfig builtin_config();

}  // namespace climval
