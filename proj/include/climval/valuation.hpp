#pragma once

#include "climval/economy.hpp"
#include "climval/scenario.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace climval {

// Exponential-OU housing index: C_t = R C_0 e^{K_t},
//   dK = (chi' + nu (chi - K)) dt + sigma_bar dBbar,
//   dBbar = rho' dB^Z + sqrt(1 - |rho|^2) dWbar,
// with linear trend chi(u) = varrho u + vartheta in years u since t0_year.
struct HousingIndexParams {
  double varrho = 0.0;     // per year
  double vartheta = 0.0;
  double nu = 0.0;         // per year, > 0
  double sigma_bar = 0.0;  // per sqrt-year, >= 0
  Vector rho;              // loadings on the economy noise, |rho| <= 1
  double k0 = 0.0;         // log-index at t0_year
  double t0_year = 2021.0;

  void validate() const;
  double chi(double years_since_t0) const { return varrho * years_since_t0 + vartheta; }
  double rho_norm2() const { return rho.size() ? rho.squaredNorm() : 0.0; }
};

struct Building {
  std::string name;
  double c0_price = 0.0;   // EUR/m^2 at the index base date
  double surface_r = 0.0;  // m^2
  double alpha = 0.0;      // kWh/m^2/yr
  double alpha_star = 0.0; // kWh/m^2/yr, alpha >= alpha_star
  std::string source;      // energy source label
  double rbar = 0.05;      // discount rate per year

  void validate() const;
};

struct RenovationDecision {
  enum class Kind { RenovateNow, RenovateAt, Never };
  Kind kind = Kind::Never;
  double date = 0.0;  // calendar year, meaningful iff kind == RenovateAt

  bool is_now() const { return kind == Kind::RenovateNow; }
  bool is_never() const { return kind == Kind::Never; }
};

struct LogNormalLaw {
  double m = 0.0;  // log-scale mean
  double v = 0.0;  // log-scale variance, >= 0
};

// Simulated efficient-building values, aligned with the driving Z grid.
struct HousingPaths {
  double t_start = 0.0;  // calendar years
  double t_end = 0.0;
  int n_steps = 0;
  std::vector<std::vector<double>> k;  // log index per path per node
  std::vector<std::vector<double>> c;  // value R C0 e^K in EUR

  double dt() const { return (t_end - t_start) / n_steps; }
  int node_index(double t) const;
};

// Euler simulation of K driven by the Brownian increments recorded in zsim.
// The grid must start at h.t0_year.
HousingPaths efficient_value_paths(const HousingIndexParams& h,
                                   const Building& building,
                                   const ZSimulation& zsim, std::uint64_t seed);

// Conditional log-normal law of C_{t+T} given the economy noise up to t.
// t and T are years since h.t0_year; bz is the increment series of one path
// on a grid covering [0, t] (years since t0_year), may be empty when t = 0.
LogNormalLaw conditional_price_law(const HousingIndexParams& h,
                                   const Building& building, double t, double T,
                                   const std::vector<Vector>& bz,
                                   double bz_dt = 0.0);

// rbar * c(alpha, alpha_star) / (alpha - alpha_star). Undefined at
// alpha == alpha_star (throws).
double marginal_threshold(const Building& building,
                          const RenovationCostParams& costs);

RenovationDecision optimal_renovation_date(const Building& building,
                                           const CarbonScenario& scenario,
                                           const EnergyPriceParams& energy,
                                           const RenovationCostParams& costs,
                                           double t);

// Transition cost X_{t,delta} in EUR/m^2, left-rectangle quadrature with
// quadrature_points nodes on [t, renovation date].
double transition_cost_x(const Building& building, const CarbonScenario& scenario,
                         const EnergyPriceParams& energy,
                         const RenovationCostParams& costs, double t,
                         int quadrature_points);

// C_t - R x. May be negative.
double climate_adjusted_value(double efficient_value, const Building& building,
                              double x);

// Deterministic stopping objective H(theta); diagnostic / oracle surface.
double h_objective(const Building& building, const CarbonScenario& scenario,
                   const EnergyPriceParams& energy,
                   const RenovationCostParams& costs, double t, double theta);

}  // namespace climval
