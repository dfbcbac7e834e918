#include "climval/scenario.hpp"

#include <cmath>
#include <stdexcept>

namespace climval {

void CarbonScenario::validate() const {
  if (!(t_end_transition > t_start_transition)) {
    throw std::invalid_argument("CarbonScenario: t_end_transition must exceed t_start_transition");
  }
  if (!(p_carbon0 > 0.0)) {
    throw std::invalid_argument("CarbonScenario: p_carbon0 must be positive");
  }
  if (eta_delta < 0.0) {
    throw std::invalid_argument("CarbonScenario: eta_delta must be nonnegative");
  }
}

void EnergyPriceParams::validate() const {
  if (f1 < 0.0) {
    throw std::invalid_argument("EnergyPriceParams: f1 must be nonnegative");
  }
}

void RenovationCostParams::validate() const {
  if (!(c0 > 0.0)) throw std::invalid_argument("RenovationCostParams: c0 must be positive");
  if (c1 < -1.0) throw std::invalid_argument("RenovationCostParams: c1 must be >= -1");
}

double carbon_price(const CarbonScenario& scenario, double t) {
  if (t <= scenario.t_start_transition) return scenario.p_carbon0;
  // clamping the argument makes the plateau exact in floating point
  double s = std::min(t, scenario.t_end_transition);
  return scenario.p_carbon0 *
         std::exp(scenario.eta_delta * (s - scenario.t_start_transition));
}

double energy_price(const EnergyPriceParams& p, double delta) {
  if (delta < 0.0) throw std::invalid_argument("energy_price: negative carbon price");
  return p.f1 * delta + p.f0;
}

double renovation_cost(const RenovationCostParams& p, double alpha,
                       double alpha_star) {
  if (alpha == alpha_star) return 0.0;
  return p.c0 * std::pow(std::abs(alpha - alpha_star), 1.0 + p.c1);
}

std::vector<CarbonScenario> scenario_library() {
  return {
      {"Current Policies", 2021.0, 2030.0, 30.957, 0.01693},
      {"NDCs", 2021.0, 2030.0, 33.321, 0.07994},
      {"Divergent Net Zero", 2021.0, 2030.0, 32.963, 0.12893},
      {"Net Zero 2050", 2021.0, 2030.0, 34.315, 0.17935},
  };
}

}  // namespace climval
