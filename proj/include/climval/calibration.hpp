#pragma once

#include "climval/timeseries.hpp"

#include <optional>

namespace climval {

struct ProductivityEstimate {
  Vector mu_hat;
  double varsigma_hat = 0.0;
  Matrix gamma_hat;   // empty when the VAR step was rejected
  Matrix sigma_hat;
  TimeSeries z_hat;   // standardized states, samples 1..M
  std::vector<Vector> residuals;  // VAR residuals, samples 2..M
  bool var_ok = false;
  std::string var_error;
};

struct HpiTrend {
  double varrho_hat = 0.0;
  double vartheta_hat = 0.0;
};

struct HpiDynamics {
  double nu_hat = 0.0;
  double sigma_bar_hat = 0.0;
};

struct HpiDynamicsOptions {
  bool detrend = false;  // subtract the fitted linear trend first
  bool rescale = false;  // divide nu by dt and sigma_bar by sqrt(dt)
};

struct RhoEstimate {
  Vector rho_hat;
  bool clamped = false;  // |rho| exceeded 1 and was scaled back
};

struct HpiEstimate {
  HpiTrend trend;
  HpiDynamics dynamics;
  Vector rho_hat;
  bool rho_clamped = false;
};

// Sample mean / pooled variance standardization followed by VAR(1) least
// squares; gamma and sigma are recovered from the one-step coefficient and
// the residual covariance.
ProductivityEstimate estimate_productivity(const TimeSeries& theta_series);

// OLS of K on (t, 1).
HpiTrend estimate_hpi_trend(const TimeSeries& k_series);

// nu = log(sum K_{m-1}^2 / sum K_m K_{m-1}), sigma_bar^2 = mean squared
// increment; both on the raw series unless options say otherwise.
HpiDynamics estimate_hpi_dynamics(const TimeSeries& k_series,
                                  const HpiTrend& trend,
                                  const HpiDynamicsOptions& options = {});

// Correlation loadings between the housing noise and the economy noise.
RhoEstimate estimate_rho(const TimeSeries& k_series, const HpiTrend& trend,
                         const HpiDynamics& dynamics,
                         const ProductivityEstimate& productivity);

}  // namespace climval
