#include "climval/linalg.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <cmath>

namespace climval {

Matrix matrix_exponential(const Matrix& m, double t) {
  if (!m.allFinite() || !std::isfinite(t)) {
    throw std::invalid_argument("matrix_exponential: non-finite input");
  }
  return (m * t).exp();
}

double condition_number(const Matrix& m) {
  Eigen::JacobiSVD<Matrix> svd(m);
  const auto& sv = svd.singularValues();
  if (sv.size() == 0 || sv(sv.size() - 1) <= 0.0) {
    return std::numeric_limits<double>::infinity();
  }
  return sv(0) / sv(sv.size() - 1);
}

Matrix upsilon(const Matrix& gamma, double h) {
  if (h < 0.0) throw std::invalid_argument("upsilon: negative h");
  const Eigen::Index n = gamma.rows();
  if (h == 0.0) return Matrix::Zero(n, n);
  if (gamma.isZero(0.0)) return h * Matrix::Identity(n, n);
  if (condition_number(gamma) <= 1e12) {
    Matrix rhs = Matrix::Identity(n, n) - matrix_exponential(gamma, -h);
    return gamma.fullPivLu().solve(rhs);
  }
  return integrate_matrix(
      [&](double s) { return matrix_exponential(gamma, -s); }, 0.0, h, 1e-10);
}

Matrix lyapunov_solve(const Matrix& gamma, const Matrix& q) {
  const Eigen::Index n = gamma.rows();
  Matrix id = Matrix::Identity(n, n);
  Matrix kron(n * n, n * n);
  // vec(gamma S + S gamma^T) = (I (x) gamma + gamma (x) I) vec(S)
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      kron.block(i * n, j * n, n, n) = id(i, j) * gamma + gamma(i, j) * id;
    }
  }
  Eigen::VectorXd vq(n * n);
  for (Eigen::Index j = 0; j < n; ++j) vq.segment(j * n, n) = q.col(j);
  Eigen::VectorXd vs = kron.fullPivLu().solve(vq);
  Matrix s(n, n);
  for (Eigen::Index j = 0; j < n; ++j) s.col(j) = vs.segment(j * n, n);
  return 0.5 * (s + s.transpose());
}

std::pair<double, std::complex<double>> min_real_eigenvalue(const Matrix& gamma) {
  Eigen::EigenSolver<Matrix> es(gamma, false);
  double min_re = std::numeric_limits<double>::infinity();
  std::complex<double> worst;
  for (Eigen::Index i = 0; i < gamma.rows(); ++i) {
    std::complex<double> ev = es.eigenvalues()(i);
    if (ev.real() < min_re) {
      min_re = ev.real();
      worst = ev;
    }
  }
  return {min_re, worst};
}

Matrix symmetric_sqrt(const Matrix& m, double tol) {
  Matrix sym = 0.5 * (m + m.transpose());
  Eigen::SelfAdjointEigenSolver<Matrix> es(sym);
  Vector ev = es.eigenvalues();
  double scale = std::max(1.0, ev.cwiseAbs().maxCoeff());
  for (Eigen::Index i = 0; i < ev.size(); ++i) {
    if (ev(i) < -tol * scale) {
      throw std::invalid_argument("symmetric_sqrt: matrix is not PSD");
    }
    ev(i) = std::sqrt(std::max(ev(i), 0.0));
  }
  return es.eigenvectors() * ev.asDiagonal() * es.eigenvectors().transpose();
}

namespace {

template <typename V>
V simpson(const std::function<V(double)>& f, double a, double b, const V& fa,
          const V& fm, const V& fb) {
  return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

template <typename V, typename NormFn>
V adaptive(const std::function<V(double)>& f, double a, double b, const V& fa,
           const V& fm, const V& fb, const V& whole, double tol, int depth,
           const NormFn& norm) {
  double m = 0.5 * (a + b);
  V fl = f(0.5 * (a + m));
  V fr = f(0.5 * (m + b));
  V left = simpson(f, a, m, fa, fl, fm);
  V right = simpson(f, m, b, fm, fr, fb);
  V delta = left + right - whole;
  if (depth <= 0 || norm(delta) <= 15.0 * tol) {
    return left + right + delta / 15.0;
  }
  return adaptive(f, a, m, fa, fl, fm, left, tol / 2.0, depth - 1, norm) +
         adaptive(f, m, b, fm, fr, fb, right, tol / 2.0, depth - 1, norm);
}

}  // namespace

Matrix integrate_matrix(const std::function<Matrix(double)>& f, double a, double b,
                        double rel_tol, int max_depth) {
  if (a == b) {
    Matrix fa = f(a);
    return Matrix::Zero(fa.rows(), fa.cols());
  }
  Matrix fa = f(a), fm = f(0.5 * (a + b)), fb = f(b);
  Matrix whole = simpson(f, a, b, fa, fm, fb);
  double scale = std::max(whole.norm(), (b - a) * std::max(fa.norm(), fb.norm()));
  double tol = rel_tol * std::max(scale, 1e-300);
  auto norm = [](const Matrix& m) { return m.norm(); };
  return adaptive(f, a, b, fa, fm, fb, whole, tol, max_depth, norm);
}

double integrate_scalar(const std::function<double(double)>& f, double a, double b,
                        double rel_tol, int max_depth) {
  if (a == b) return 0.0;
  double fa = f(a), fm = f(0.5 * (a + b)), fb = f(b);
  double whole = simpson(f, a, b, fa, fm, fb);
  double scale = std::max(std::abs(whole),
                          std::abs(b - a) * std::max(std::abs(fa), std::abs(fb)));
  double tol = rel_tol * std::max(scale, 1e-300);
  auto norm = [](double x) { return std::abs(x); };
  return adaptive(f, a, b, fa, fm, fb, whole, tol, max_depth, norm);
}

}  // namespace climval
