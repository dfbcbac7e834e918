#include "climval/economy.hpp"

#include "climval/rng.hpp"

#include <Eigen/Cholesky>

#include <cmath>
#include <sstream>

namespace climval {

void ProductivityParams::validate() const {
  if (n_sectors <= 0) throw std::invalid_argument("ProductivityParams: n_sectors must be positive");
  auto check_dim = [&](const auto& m, const char* name, Eigen::Index r, Eigen::Index c) {
    if (m.rows() != r || m.cols() != c) {
      std::ostringstream os;
      os << "ProductivityParams: " << name << " has wrong dimensions";
      throw std::invalid_argument(os.str());
    }
  };
  check_dim(mu, "mu", n_sectors, 1);
  check_dim(gamma, "gamma", n_sectors, n_sectors);
  check_dim(sigma, "sigma", n_sectors, n_sectors);
  if (a0.size() != 0) check_dim(a0, "a0", n_sectors, 1);
  if (z0_mean.size() != 0) check_dim(z0_mean, "z0_mean", n_sectors, 1);
  if (z0_cov.size() != 0) check_dim(z0_cov, "z0_cov", n_sectors, n_sectors);
  if (!(varsigma > 0.0 && varsigma <= 1.0)) {
    throw std::invalid_argument("ProductivityParams: varsigma must be in (0, 1]");
  }
  Eigen::SelfAdjointEigenSolver<Matrix> es(sigma_outer());
  if (es.eigenvalues().minCoeff() <= 0.0) {
    throw std::invalid_argument("ProductivityParams: sigma is not positive definite");
  }
  auto [min_re, ev] = min_real_eigenvalue(gamma);
  if (min_re <= 0.0) {
    std::ostringstream os;
    os << "ProductivityParams: -gamma is not Hurwitz, eigenvalue " << ev.real()
       << (ev.imag() >= 0 ? "+" : "") << ev.imag() << "i has nonpositive real part";
    throw std::invalid_argument(os.str());
  }
}

int PathGrid::node_index(double t) const {
  if (t < t_start - 1e-12 || t > t_end + 1e-12) {
    throw std::invalid_argument("PathGrid: time outside grid");
  }
  int k = static_cast<int>(std::floor((t - t_start) / dt()));
  if (k < 0) k = 0;
  if (k > n_steps) k = n_steps;
  return k;
}

const Vector& PathGrid::at(double t) const { return values[node_index(t)]; }

ConditionalGaussian conditional_law_z(const ProductivityParams& params,
                                      const Vector& z_t, double h) {
  if (h < 0.0) throw std::invalid_argument("conditional_law_z: negative h");
  ConditionalGaussian law;
  law.mean = matrix_exponential(params.gamma, -h) * z_t;
  if (h == 0.0) {
    law.cov = Matrix::Zero(params.n_sectors, params.n_sectors);
    return law;
  }
  Matrix q = params.sigma_outer();
  law.cov = integrate_matrix(
      [&](double u) {
        Matrix e = matrix_exponential(params.gamma, -u);
        return Matrix(e * q * e.transpose());
      },
      0.0, h, 1e-8);
  return law;
}

ConditionalGaussian conditional_law_a(const ProductivityParams& params,
                                      const Vector& a_t, const Vector& z_t,
                                      double h) {
  if (h < 0.0) throw std::invalid_argument("conditional_law_a: negative h");
  ConditionalGaussian law;
  law.mean = params.mu * h + params.varsigma * upsilon(params.gamma, h) * z_t + a_t;
  if (h == 0.0) {
    law.cov = Matrix::Zero(params.n_sectors, params.n_sectors);
    return law;
  }
  Matrix q = params.sigma_outer();
  double vs2 = params.varsigma * params.varsigma;
  law.cov = vs2 * integrate_matrix(
                      [&](double u) {
                        Matrix up = upsilon(params.gamma, u);
                        return Matrix(up * q * up.transpose());
                      },
                      0.0, h, 1e-8);
  return law;
}

Matrix stationary_covariance(const ProductivityParams& params) {
  auto [min_re, ev] = min_real_eigenvalue(params.gamma);
  if (min_re <= 0.0) {
    std::ostringstream os;
    os << "stationary_covariance: -gamma is not Hurwitz, eigenvalue "
       << ev.real() << (ev.imag() >= 0 ? "+" : "") << ev.imag()
       << "i has nonpositive real part";
    throw std::invalid_argument(os.str());
  }
  return lyapunov_solve(params.gamma, params.sigma_outer());
}

ZSimulation simulate_z(const ProductivityParams& params, double t_start,
                       double t_end, int n_steps, int n_paths,
                       std::uint64_t seed, Z0Law z0_law) {
  if (n_steps < 1) throw std::invalid_argument("simulate_z: n_steps must be >= 1");
  if (n_paths < 1) throw std::invalid_argument("simulate_z: n_paths must be >= 1");
  if (!(t_end > t_start)) throw std::invalid_argument("simulate_z: t_end must exceed t_start");

  const int n = params.n_sectors;
  Vector z0_mean = params.z0_mean.size() ? params.z0_mean : Vector::Zero(n);
  Matrix z0_cov;
  switch (z0_law) {
    case Z0Law::FromParams:
      z0_cov = params.z0_cov.size() ? params.z0_cov : params.sigma_outer();
      break;
    case Z0Law::Stationary:
      z0_cov = stationary_covariance(params);
      break;
    case Z0Law::Deterministic:
      z0_cov = Matrix::Zero(n, n);
      break;
  }
  Matrix z0_root = symmetric_sqrt(z0_cov);

  ZSimulation sim;
  sim.t_start = t_start;
  sim.t_end = t_end;
  sim.n_steps = n_steps;
  sim.paths.resize(n_paths);
  sim.increments.resize(n_paths);

  const double dt = (t_end - t_start) / n_steps;
  const double sqrt_dt = std::sqrt(dt);
  Matrix step = Matrix::Identity(n, n) - params.gamma * dt;

  for (int p = 0; p < n_paths; ++p) {
    PathRng rng(seed, static_cast<std::uint64_t>(p));
    PathGrid& path = sim.paths[p];
    path.t_start = t_start;
    path.t_end = t_end;
    path.n_steps = n_steps;
    path.values.resize(n_steps + 1);
    sim.increments[p].resize(n_steps);

    Vector g(n);
    for (int i = 0; i < n; ++i) g(i) = rng.normal();
    path.values[0] = z0_mean + z0_root * g;
    for (int k = 1; k <= n_steps; ++k) {
      Vector eta(n);
      for (int i = 0; i < n; ++i) eta(i) = sqrt_dt * rng.normal();
      sim.increments[p][k - 1] = eta;
      path.values[k] = step * path.values[k - 1] + params.sigma * eta;
    }
  }
  return sim;
}

std::vector<PathGrid> simulate_a(const ProductivityParams& params,
                                 const ZSimulation& zsim) {
  const int n = params.n_sectors;
  Vector a0 = params.a0.size() ? params.a0 : Vector::Zero(n);
  const double dt = (zsim.t_end - zsim.t_start) / zsim.n_steps;

  std::vector<PathGrid> out(zsim.paths.size());
  for (std::size_t p = 0; p < zsim.paths.size(); ++p) {
    const PathGrid& z = zsim.paths[p];
    PathGrid& a = out[p];
    a.t_start = z.t_start;
    a.t_end = z.t_end;
    a.n_steps = z.n_steps;
    a.values.resize(z.n_steps + 1);
    Vector cum = Vector::Zero(n);  // left-rectangle integral of Z
    a.values[0] = a0;
    for (int k = 1; k <= z.n_steps; ++k) {
      cum += dt * z.values[k - 1];
      a.values[k] = a0 + params.mu * (dt * k) + params.varsigma * cum;
    }
  }
  return out;
}

Vector a_at(const ProductivityParams& params, const PathGrid& z_path, double t) {
  const int n = params.n_sectors;
  Vector a0 = params.a0.size() ? params.a0 : Vector::Zero(n);
  const double dt = z_path.dt();
  int k = z_path.node_index(t);
  if (z_path.time_at(k) > t) --k;
  if (k < 0) k = 0;
  Vector cum = Vector::Zero(n);
  for (int i = 0; i < k; ++i) cum += dt * z_path.values[i];
  cum += (t - z_path.time_at(k)) * z_path.values[k];
  return a0 + params.mu * (t - z_path.t_start) + params.varsigma * cum;
}

}  // namespace climval
