#pragma once

#include <Eigen/Dense>
#include <complex>
#include <functional>
#include <stdexcept>

namespace climval {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

// e^{m t}. Scaling-and-squaring with Pade approximation (degree 13 for
// non-trivial norms). Throws on non-finite entries.
Matrix matrix_exponential(const Matrix& m, double t);

// Upsilon_h = integral of e^{-gamma s} over [0, h].
// Closed form gamma^{-1}(I - e^{-gamma h}) unless cond(gamma) > 1e12,
// in which case the integrand is quadratured directly.
Matrix upsilon(const Matrix& gamma, double h);

// Solves gamma S + S gamma^T = q (q symmetric) by Kronecker vectorization.
Matrix lyapunov_solve(const Matrix& gamma, const Matrix& q);

// Smallest real part over the spectrum of gamma, with the offending
// eigenvalue. -gamma is Hurwitz iff the returned real part is > 0.
std::pair<double, std::complex<double>> min_real_eigenvalue(const Matrix& gamma);

// Symmetric PSD square root. Negative eigenvalues below -tol throw,
// small negatives are clipped to zero.
Matrix symmetric_sqrt(const Matrix& m, double tol = 1e-10);

double condition_number(const Matrix& m);

// Adaptive Simpson on a matrix-valued integrand, relative tolerance on the
// Frobenius norm of the result.
Matrix integrate_matrix(const std::function<Matrix(double)>& f, double a, double b,
                        double rel_tol = 1e-8, int max_depth = 40);

double integrate_scalar(const std::function<double(double)>& f, double a, double b,
                        double rel_tol = 1e-10, int max_depth = 48);

}  // namespace climval
