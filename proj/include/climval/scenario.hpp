#pragma once

#include <string>
#include <vector>

namespace climval {

// Piecewise-exponential carbon price: constant before t_start_transition,
// exponential growth on the transition window, constant plateau after.
struct CarbonScenario {
  std::string name;
  double t_start_transition = 2021.0;  // t-circ, calendar year
  double t_end_transition = 2030.0;    // t-star
  double p_carbon0 = 0.0;              // EUR / tCO2 at t-circ
  double eta_delta = 0.0;              // per year

  void validate() const;
};

// Linear energy price f(delta) = f1 * delta + f0 for one source.
struct EnergyPriceParams {
  std::string source;
  double f1 = 0.0;  // EUR/kWh per EUR/tCO2
  double f0 = 0.0;  // EUR/kWh (may be negative, see config validation)

  void validate() const;
};

// Renovation cost c0 |alpha - alpha_star|^{1+c1} per square meter.
struct RenovationCostParams {
  double c0 = 0.0;
  double c1 = 0.0;

  void validate() const;
};

double carbon_price(const CarbonScenario& scenario, double t);
double energy_price(const EnergyPriceParams& p, double delta);
double renovation_cost(const RenovationCostParams& p, double alpha,
                       double alpha_star);

// The four built-in NGFS scenarios.
std::vector<CarbonScenario> scenario_library();

}  // namespace climval
