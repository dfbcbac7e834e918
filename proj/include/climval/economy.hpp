#pragma once

#include "climval/linalg.hpp"

#include <cstdint>
#include <vector>

namespace climval {

// Multisector productivity economy:
//   dZ_t = -Gamma Z_t dt + Sigma dB_t,   dA_t = (mu + varsigma Z_t) dt.
struct ProductivityParams {
  int n_sectors = 0;
  Vector mu;         // per year
  Matrix gamma;      // per year, -gamma Hurwitz
  Matrix sigma;      // per sqrt-year, positive definite
  double varsigma = 1.0;  // in (0, 1]
  Vector a0;
  Vector z0_mean;    // default zero
  Matrix z0_cov;     // default Sigma Sigma^T

  // Throws std::invalid_argument on violated invariants.
  void validate() const;

  Matrix sigma_outer() const { return sigma * sigma.transpose(); }
};

struct ConditionalGaussian {
  Vector mean;
  Matrix cov;
};

// Uniform grid of vector states, piecewise-constant between nodes.
struct PathGrid {
  double t_start = 0.0;
  double t_end = 0.0;
  int n_steps = 0;
  std::vector<Vector> values;  // n_steps + 1 nodes

  double dt() const { return (t_end - t_start) / n_steps; }
  double time_at(int k) const { return t_start + dt() * k; }
  // Piecewise-constant left interpolation.
  const Vector& at(double t) const;
  int node_index(double t) const;
};

struct ZSimulation {
  double t_start = 0.0;
  double t_end = 0.0;
  int n_steps = 0;
  std::vector<PathGrid> paths;
  // Brownian increments eta_k ~ N(0, dt I), one vector per step per path.
  std::vector<std::vector<Vector>> increments;
};

enum class Z0Law { FromParams, Stationary, Deterministic };

Matrix make_productivity_params_check(const ProductivityParams& p);

// Conditional law of Z_{t+h} given Z_t.
ConditionalGaussian conditional_law_z(const ProductivityParams& params,
                                      const Vector& z_t, double h);

// Conditional law of A_{t+h} given (A_t, Z_t).
ConditionalGaussian conditional_law_a(const ProductivityParams& params,
                                      const Vector& a_t, const Vector& z_t,
                                      double h);

// Solves gamma S + S gamma^T = Sigma Sigma^T. Throws if -gamma is not Hurwitz.
Matrix stationary_covariance(const ProductivityParams& params);

// Euler-Maruyama simulation of Z on [t_start, t_end] with n_steps steps.
// Identical (params, grid, seed) gives identical output, path by path.
ZSimulation simulate_z(const ProductivityParams& params, double t_start,
                       double t_end, int n_steps, int n_paths,
                       std::uint64_t seed, Z0Law z0_law = Z0Law::FromParams);

// Integrated productivity by the left-rectangle cumulative rule. The returned
// grids share the Z grid; node k holds A at time u_k.
std::vector<PathGrid> simulate_a(const ProductivityParams& params,
                                 const ZSimulation& zsim);

// A-path evaluation at an off-node time t (left-rectangle partial step).
Vector a_at(const ProductivityParams& params, const PathGrid& z_path, double t);

}  // namespace climval
