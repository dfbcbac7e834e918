#include "climval/calibration.hpp"

#include <cmath>
#include <stdexcept>

namespace climval {

ProductivityEstimate estimate_productivity(const TimeSeries& theta_series) {
  theta_series.validate();
  const int M = theta_series.n_intervals();
  const int dim = theta_series.dim();
  if (M < dim + 2) {
    throw std::invalid_argument("estimate_productivity: need at least I + 2 observations");
  }
  const double dt = theta_series.dt();

  ProductivityEstimate est;
  // sums over samples 1..M
  est.mu_hat = Vector::Zero(dim);
  for (int m = 1; m <= M; ++m) est.mu_hat += theta_series.values[m];
  est.mu_hat /= static_cast<double>(M);

  double pooled = 0.0;
  for (int m = 1; m <= M; ++m) {
    Vector d = theta_series.values[m] - est.mu_hat;
    pooled += d.squaredNorm();
  }
  est.varsigma_hat = std::sqrt(pooled / (M - 1));

  if (est.varsigma_hat <= 0.0) {
    est.var_ok = false;
    est.var_error = "constant series: zero pooled variance, VAR step rejected";
    return est;
  }

  est.z_hat.t0 = theta_series.t0 + dt;
  est.z_hat.t1 = theta_series.t1;
  est.z_hat.values.reserve(M);
  for (int m = 1; m <= M; ++m) {
    est.z_hat.values.push_back((theta_series.values[m] - est.mu_hat) / est.varsigma_hat);
  }

  // VAR(1) least squares: Z_m = B Z_{m-1} + E_m
  Matrix sxx = Matrix::Zero(dim, dim);
  Matrix syx = Matrix::Zero(dim, dim);
  for (int m = 1; m < M; ++m) {
    const Vector& x = est.z_hat.values[m - 1];
    const Vector& y = est.z_hat.values[m];
    sxx += x * x.transpose();
    syx += y * x.transpose();
  }
  Eigen::FullPivLU<Matrix> lu(sxx);
  if (!lu.isInvertible()) {
    est.var_ok = false;
    est.var_error = "degenerate regressor covariance, VAR step rejected";
    return est;
  }
  Matrix b = syx * lu.inverse();
  est.gamma_hat = (Matrix::Identity(dim, dim) - b) / dt;

  Matrix resid_cov = Matrix::Zero(dim, dim);
  est.residuals.reserve(M - 1);
  for (int m = 1; m < M; ++m) {
    Vector e = est.z_hat.values[m] - b * est.z_hat.values[m - 1];
    resid_cov += e * e.transpose();
    est.residuals.push_back(std::move(e));
  }
  resid_cov /= static_cast<double>(M - 1);
  est.sigma_hat = symmetric_sqrt(resid_cov / dt);
  est.var_ok = true;
  return est;
}

HpiTrend estimate_hpi_trend(const TimeSeries& k_series) {
  k_series.validate();
  if (k_series.dim() != 1) throw std::invalid_argument("estimate_hpi_trend: scalar series expected");
  const int n = static_cast<int>(k_series.values.size());
  double st = 0.0, st2 = 0.0, sk = 0.0, stk = 0.0;
  for (int m = 0; m < n; ++m) {
    double t = k_series.t0 + k_series.dt() * m;
    double k = k_series.values[m](0);
    st += t;
    st2 += t * t;
    sk += k;
    stk += t * k;
  }
  double det = n * st2 - st * st;
  if (std::abs(det) < 1e-12 * std::max(1.0, st2 * n)) {
    throw std::invalid_argument("estimate_hpi_trend: degenerate time design");
  }
  HpiTrend trend;
  trend.varrho_hat = (n * stk - st * sk) / det;
  trend.vartheta_hat = (sk - trend.varrho_hat * st) / n;
  return trend;
}

HpiDynamics estimate_hpi_dynamics(const TimeSeries& k_series,
                                  const HpiTrend& trend,
                                  const HpiDynamicsOptions& options) {
  k_series.validate();
  if (k_series.dim() != 1) throw std::invalid_argument("estimate_hpi_dynamics: scalar series expected");
  const int M = k_series.n_intervals();
  const double dt = k_series.dt();

  auto k_at = [&](int m) {
    double k = k_series.values[m](0);
    if (options.detrend) {
      double t = k_series.t0 + dt * m;
      k -= trend.varrho_hat * t + trend.vartheta_hat;
    }
    return k;
  };

  double s_prev2 = 0.0, s_cross = 0.0, s_inc2 = 0.0;
  for (int m = 1; m <= M; ++m) {
    double kp = k_at(m - 1), kc = k_at(m);
    s_prev2 += kp * kp;
    s_cross += kc * kp;
    double inc = kc - kp;
    s_inc2 += inc * inc;
  }

  HpiDynamics dyn;
  if (s_inc2 == 0.0 && s_prev2 == s_cross) {
    // constant series: ratio is 1, increments vanish
    dyn.nu_hat = 0.0;
    dyn.sigma_bar_hat = 0.0;
  } else {
    if (!(s_prev2 > 0.0) || !(s_cross > 0.0)) {
      throw std::runtime_error("estimate_hpi_dynamics: nonpositive ratio in the mean-reversion estimator");
    }
    dyn.nu_hat = std::log(s_prev2 / s_cross);
    dyn.sigma_bar_hat = std::sqrt(s_inc2 / M);
  }
  if (options.rescale) {
    dyn.nu_hat /= dt;
    dyn.sigma_bar_hat /= std::sqrt(dt);
  }
  return dyn;
}

RhoEstimate estimate_rho(const TimeSeries& k_series, const HpiTrend& trend,
                         const HpiDynamics& dynamics,
                         const ProductivityEstimate& productivity) {
  if (!(dynamics.sigma_bar_hat > 0.0)) {
    throw std::invalid_argument("estimate_rho: sigma_bar_hat must be positive");
  }
  if (!productivity.var_ok) {
    throw std::invalid_argument("estimate_rho: productivity VAR estimate unavailable");
  }
  const int M = k_series.n_intervals();
  const double dt = k_series.dt();
  // residuals cover samples 2..M of the economy series; align the housing
  // increments on the same indices, counted from the end
  const int n = static_cast<int>(productivity.residuals.size());
  if (M < n + 1) {
    throw std::invalid_argument("estimate_rho: series shorter than the residual record");
  }
  const int dim = static_cast<int>(productivity.residuals.front().size());

  Eigen::FullPivLU<Matrix> sig_lu(productivity.sigma_hat);
  if (!sig_lu.isInvertible()) {
    throw std::invalid_argument("estimate_rho: singular sigma_hat");
  }

  std::vector<double> u_house(n);
  std::vector<Vector> u_econ(n);
  for (int i = 0; i < n; ++i) {
    int m = M - n + 1 + i;
    double t_prev = k_series.t0 + dt * (m - 1);
    double k_prev = k_series.values[m - 1](0);
    double inc = k_series.values[m](0) - k_prev;
    double drift = (trend.varrho_hat +
                    dynamics.nu_hat * (trend.varrho_hat * t_prev +
                                       trend.vartheta_hat - k_prev)) * dt;
    u_house[i] = (inc - drift) / dynamics.sigma_bar_hat;
    u_econ[i] = sig_lu.solve(productivity.residuals[i]);
  }

  Vector econ_mean = Vector::Zero(dim);
  double house_mean = 0.0;
  for (int i = 0; i < n; ++i) {
    econ_mean += u_econ[i];
    house_mean += u_house[i];
  }
  econ_mean /= n;
  house_mean /= n;

  Matrix var_econ = Matrix::Zero(dim, dim);
  Vector cov = Vector::Zero(dim);
  for (int i = 0; i < n; ++i) {
    Vector d = u_econ[i] - econ_mean;
    var_econ += d * d.transpose();
    cov += d * (u_house[i] - house_mean);
  }
  var_econ /= n;
  cov /= n;

  Eigen::FullPivLU<Matrix> var_lu(var_econ);
  if (!var_lu.isInvertible()) {
    throw std::invalid_argument("estimate_rho: singular economy-noise covariance");
  }
  RhoEstimate est;
  est.rho_hat = var_lu.solve(cov);
  double norm = est.rho_hat.norm();
  if (norm > 1.0) {
    est.rho_hat /= norm;
    est.clamped = true;
  }
  return est;
}

}  // namespace climval
