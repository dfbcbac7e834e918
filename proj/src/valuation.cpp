#include "climval/valuation.hpp"

#include "climval/rng.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace climval {

void HousingIndexParams::validate() const {
  if (!(nu > 0.0)) throw std::invalid_argument("HousingIndexParams: nu must be positive");
  if (sigma_bar < 0.0) throw std::invalid_argument("HousingIndexParams: sigma_bar must be nonnegative");
  if (rho_norm2() > 1.0 + 1e-12) {
    throw std::invalid_argument("HousingIndexParams: |rho| must be <= 1");
  }
}

void Building::validate() const {
  if (!(surface_r > 0.0)) throw std::invalid_argument("Building: surface must be positive");
  if (!(rbar > 0.0)) throw std::invalid_argument("Building: rbar must be positive");
  if (alpha_star < 0.0 || alpha < alpha_star) {
    throw std::invalid_argument("Building: alpha >= alpha_star >= 0 required");
  }
}

int HousingPaths::node_index(double t) const {
  if (t < t_start - 1e-12 || t > t_end + 1e-12) {
    throw std::invalid_argument("HousingPaths: time outside grid");
  }
  int k = static_cast<int>(std::floor((t - t_start) / dt() + 1e-9));
  return std::clamp(k, 0, n_steps);
}

HousingPaths efficient_value_paths(const HousingIndexParams& h,
                                   const Building& building,
                                   const ZSimulation& zsim, std::uint64_t seed) {
  h.validate();
  building.validate();
  if (std::abs(zsim.t_start - h.t0_year) > 1e-9) {
    throw std::invalid_argument("efficient_value_paths: grid must start at the index base year");
  }
  const int n_paths = static_cast<int>(zsim.paths.size());
  const int steps = zsim.n_steps;
  const double dt = (zsim.t_end - zsim.t_start) / steps;
  const double sqrt_dt = std::sqrt(dt);
  const double resid = std::sqrt(std::max(0.0, 1.0 - h.rho_norm2()));

  HousingPaths out;
  out.t_start = zsim.t_start;
  out.t_end = zsim.t_end;
  out.n_steps = steps;
  out.k.resize(n_paths);
  out.c.resize(n_paths);

  for (int p = 0; p < n_paths; ++p) {
    PathRng rng(splitmix64(seed ^ 0x9d2c5680ULL), static_cast<std::uint64_t>(p));
    auto& kp = out.k[p];
    auto& cp = out.c[p];
    kp.resize(steps + 1);
    cp.resize(steps + 1);
    kp[0] = h.k0;
    cp[0] = building.surface_r * building.c0_price * std::exp(h.k0);
    for (int j = 1; j <= steps; ++j) {
      double u_prev = dt * (j - 1);  // years since t0
      double corr = 0.0;
      if (h.rho.size()) corr = h.rho.dot(zsim.increments[p][j - 1]);
      double xi = sqrt_dt * rng.normal();
      double drift = h.varrho + h.nu * (h.chi(u_prev) - kp[j - 1]);
      kp[j] = kp[j - 1] + drift * dt + h.sigma_bar * (corr + resid * xi);
      cp[j] = building.surface_r * building.c0_price * std::exp(kp[j]);
    }
  }
  return out;
}

LogNormalLaw conditional_price_law(const HousingIndexParams& h,
                                   const Building& building, double t, double T,
                                   const std::vector<Vector>& bz, double bz_dt) {
  if (t < 0.0 || T < 0.0) {
    throw std::invalid_argument("conditional_price_law: negative t or T");
  }
  h.validate();
  const double horizon = t + T;
  LogNormalLaw law;
  law.m = std::log(building.surface_r * building.c0_price) + h.chi(horizon) -
          (h.chi(0.0) - h.k0) * std::exp(-h.nu * horizon);
  if (t > 0.0 && h.rho.size() && !bz.empty()) {
    if (!(bz_dt > 0.0)) {
      throw std::invalid_argument("conditional_price_law: bz_dt must be positive");
    }
    double acc = 0.0;
    for (std::size_t k = 0; k < bz.size(); ++k) {
      double s = bz_dt * static_cast<double>(k);  // left endpoint
      if (s >= t - 1e-12) break;
      acc += std::exp(-h.nu * (horizon - s)) * h.rho.dot(bz[k]);
    }
    law.m += h.sigma_bar * acc;
  }
  const double s2 = h.sigma_bar * h.sigma_bar;
  const double rn2 = h.rho_norm2();
  law.v = s2 * rn2 * (1.0 - std::exp(-2.0 * h.nu * T)) / (2.0 * h.nu) +
          s2 * (1.0 - rn2) * (1.0 - std::exp(-2.0 * h.nu * horizon)) / (2.0 * h.nu);
  return law;
}

double marginal_threshold(const Building& building,
                          const RenovationCostParams& costs) {
  if (building.alpha == building.alpha_star) {
    throw std::invalid_argument("marginal_threshold: undefined at alpha == alpha_star");
  }
  double d = building.alpha - building.alpha_star;
  return building.rbar * costs.c0 * std::pow(std::abs(d), costs.c1);
}

RenovationDecision optimal_renovation_date(const Building& building,
                                           const CarbonScenario& scenario,
                                           const EnergyPriceParams& energy,
                                           const RenovationCostParams& costs,
                                           double t) {
  building.validate();
  scenario.validate();
  if (!std::isfinite(t)) throw std::invalid_argument("optimal_renovation_date: non-finite t");

  if (building.alpha == building.alpha_star) {
    return {RenovationDecision::Kind::Never, 0.0};
  }
  const double tau = marginal_threshold(building, costs);
  auto f_at = [&](double s) { return energy_price(energy, carbon_price(scenario, s)); };

  // f is non-decreasing along delta, so the pointwise cases reduce to the
  // value at t and at the plateau.
  if (f_at(t) >= tau) return {RenovationDecision::Kind::RenovateNow, t};
  const double t_star = scenario.t_end_transition;
  if (f_at(t_star) < tau) return {RenovationDecision::Kind::Never, 0.0};

  const double lo0 = std::max(t, scenario.t_start_transition);
  // Closed form for the pure-exponential window.
  if (scenario.eta_delta > 0.0 && energy.f1 > 0.0) {
    double arg = (tau - energy.f0) / (energy.f1 * scenario.p_carbon0);
    if (arg > 0.0) {
      double theta = scenario.t_start_transition + std::log(arg) / scenario.eta_delta;
      if (theta <= t) return {RenovationDecision::Kind::RenovateNow, t};
      if (theta <= t_star + 1e-12) {
        return {RenovationDecision::Kind::RenovateAt, std::min(theta, t_star)};
      }
    }
  }
  // Monotone bisection of f(delta_theta) - tau on [lo0, t_star].
  double lo = lo0, hi = t_star;
  if (f_at(lo) >= tau) return {RenovationDecision::Kind::RenovateNow, t};
  while (hi - lo > 1e-9) {
    double mid = 0.5 * (lo + hi);
    if (f_at(mid) < tau) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return {RenovationDecision::Kind::RenovateAt, 0.5 * (lo + hi)};
}

namespace {

// Left-rectangle quadrature of f(delta_u) e^{-rbar (u - t)} over [a, b].
double energy_integral_rect(const CarbonScenario& scenario,
                            const EnergyPriceParams& energy, double rbar,
                            double t, double a, double b, int points) {
  if (b <= a) return 0.0;
  const double step = (b - a) / points;
  double acc = 0.0;
  for (int p = 0; p < points; ++p) {
    double u = a + step * p;
    acc += energy_price(energy, carbon_price(scenario, u)) *
           std::exp(-rbar * (u - t));
  }
  return acc * step;
}

}  // namespace

double transition_cost_x(const Building& building, const CarbonScenario& scenario,
                         const EnergyPriceParams& energy,
                         const RenovationCostParams& costs, double t,
                         int quadrature_points) {
  if (quadrature_points < 1) {
    throw std::invalid_argument("transition_cost_x: quadrature_points must be >= 1");
  }
  building.validate();
  if (building.alpha == building.alpha_star) return 0.0;

  const double d = building.alpha - building.alpha_star;
  const double cren = renovation_cost(costs, building.alpha, building.alpha_star);
  RenovationDecision dec = optimal_renovation_date(building, scenario, energy, costs, t);

  switch (dec.kind) {
    case RenovationDecision::Kind::RenovateNow:
      return cren;
    case RenovationDecision::Kind::RenovateAt: {
      double theta = dec.date;
      return cren * std::exp(-building.rbar * (theta - t)) +
             d * energy_integral_rect(scenario, energy, building.rbar, t, t,
                                      theta, quadrature_points);
    }
    case RenovationDecision::Kind::Never: {
      // renovation cost vanishes at infinity; split the improper integral at
      // the plateau start and close the tail analytically
      double split = std::max(t, scenario.t_end_transition);
      double f_plateau = energy_price(
          energy, carbon_price(scenario, scenario.t_end_transition));
      double tail = f_plateau * std::exp(-building.rbar * (split - t)) / building.rbar;
      return d * (energy_integral_rect(scenario, energy, building.rbar, t, t,
                                       split, quadrature_points) +
                  tail);
    }
  }
  return 0.0;
}

double climate_adjusted_value(double efficient_value, const Building& building,
                              double x) {
  if (x < 0.0) throw std::invalid_argument("climate_adjusted_value: negative x");
  return efficient_value - building.surface_r * x;
}

double h_objective(const Building& building, const CarbonScenario& scenario,
                   const EnergyPriceParams& energy,
                   const RenovationCostParams& costs, double t, double theta) {
  if (theta < t) throw std::invalid_argument("h_objective: theta < t");
  building.validate();
  if (building.alpha == building.alpha_star) return 0.0;

  const double d = building.alpha - building.alpha_star;
  const double cren = renovation_cost(costs, building.alpha, building.alpha_star);
  auto integrand = [&](double u) {
    return energy_price(energy, carbon_price(scenario, u)) *
           std::exp(-building.rbar * (u - t));
  };
  // split at the carbon-price kinks
  std::vector<double> knots = {t};
  for (double s : {scenario.t_start_transition, scenario.t_end_transition}) {
    if (s > t && s < theta) knots.push_back(s);
  }
  knots.push_back(theta);
  std::sort(knots.begin(), knots.end());
  double integral = 0.0;
  for (std::size_t i = 0; i + 1 < knots.size(); ++i) {
    integral += integrate_scalar(integrand, knots[i], knots[i + 1], 1e-12);
  }
  return cren * std::exp(-building.rbar * (theta - t)) + d * integral;
}

}  // namespace climval
