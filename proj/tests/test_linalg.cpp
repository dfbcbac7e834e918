#include "climval/linalg.hpp"

#include <doctest.h>

#include <cmath>
#include <limits>

using namespace climval;

namespace {

Matrix taylor_exp(const Matrix& m, int terms) {
  Matrix acc = Matrix::Identity(m.rows(), m.cols());
  Matrix term = Matrix::Identity(m.rows(), m.cols());
  for (int k = 1; k <= terms; ++k) {
    term = term * m / static_cast<double>(k);
    acc += term;
  }
  return acc;
}

}  // namespace

TEST_CASE("matrix_exponential: zero matrix gives identity") {
  Matrix z = Matrix::Zero(3, 3);
  CHECK((matrix_exponential(z, 5.0) - Matrix::Identity(3, 3)).norm() == 0.0);
}

TEST_CASE("matrix_exponential: diagonal case") {
  Matrix d = Matrix::Zero(2, 2);
  d.diagonal() << -1.0, -2.0;
  Matrix e = matrix_exponential(d, 1.0);
  CHECK(e(0, 0) == doctest::Approx(std::exp(-1.0)).epsilon(1e-14));
  CHECK(e(1, 1) == doctest::Approx(std::exp(-2.0)).epsilon(1e-14));
  CHECK(std::abs(e(0, 1)) < 1e-15);
  CHECK(std::abs(e(1, 0)) < 1e-15);
}

TEST_CASE("matrix_exponential: rotation generator vs truncated Taylor") {
  Matrix g(2, 2);
  g << 0.0, -1.0, 1.0, 0.0;
  double t = M_PI / 2.0;
  Matrix e = matrix_exponential(g, t);
  // cos/sin matrix at pi/2 is the generator itself
  CHECK((e - g).norm() < 1e-12);
  CHECK((e - taylor_exp(g * t, 30)).norm() < 1e-12);
}

TEST_CASE("matrix_exponential: e^{mt} e^{-mt} = identity") {
  Matrix m(3, 3);
  m << 0.4, -0.2, 0.1, 0.3, 0.9, -0.5, 0.0, 0.2, 1.3;
  Matrix prod = matrix_exponential(m, 1.7) * matrix_exponential(m, -1.7);
  CHECK((prod - Matrix::Identity(3, 3)).norm() < 1e-9);
}

TEST_CASE("matrix_exponential: non-finite input throws") {
  Matrix m = Matrix::Zero(2, 2);
  m(0, 1) = std::numeric_limits<double>::quiet_NaN();
  CHECK_THROWS_AS(matrix_exponential(m, 1.0), std::invalid_argument);
}

TEST_CASE("upsilon: gamma = 0 gives h * identity") {
  Matrix z = Matrix::Zero(2, 2);
  CHECK((upsilon(z, 2.0) - 2.0 * Matrix::Identity(2, 2)).norm() < 1e-12);
}

TEST_CASE("upsilon: h = 0 gives zero") {
  Matrix g(2, 2);
  g << 1.0, 0.2, 0.0, 0.7;
  CHECK(upsilon(g, 0.0).norm() < 1e-15);
}

TEST_CASE("upsilon: scalar antiderivative 1 - e^{-1}") {
  Matrix g(1, 1);
  g << 1.0;
  CHECK(upsilon(g, 1.0)(0, 0) == doctest::Approx(1.0 - std::exp(-1.0)).epsilon(1e-12));
}

TEST_CASE("upsilon: derivative equals e^{-gamma h}") {
  Matrix g(2, 2);
  g << 0.8, 0.3, -0.1, 1.2;
  double h = 0.9, eps = 1e-5;
  Matrix fd = (upsilon(g, h + eps) - upsilon(g, h - eps)) / (2.0 * eps);
  CHECK((fd - matrix_exponential(-g, h)).norm() < 1e-6);
}

TEST_CASE("upsilon: negative h throws") {
  Matrix g = Matrix::Identity(2, 2);
  CHECK_THROWS_AS(upsilon(g, -0.1), std::invalid_argument);
}

TEST_CASE("lyapunov_solve: scalar sigma^2 / (2 gamma)") {
  Matrix g(1, 1), q(1, 1);
  g << 0.8;
  q << 0.25;  // sigma^2 with sigma = 0.5
  CHECK(lyapunov_solve(g, q)(0, 0) == doctest::Approx(0.25 / 1.6).epsilon(1e-12));
}

TEST_CASE("lyapunov_solve: identity pair gives half identity") {
  Matrix i = Matrix::Identity(3, 3);
  CHECK((lyapunov_solve(i, i) - 0.5 * i).norm() < 1e-12);
}

TEST_CASE("lyapunov_solve: residual is tiny for a generic stable system") {
  Matrix g(3, 3);
  g << 1.0, 0.3, 0.0, 0.1, 0.8, 0.2, 0.0, -0.1, 1.5;
  Matrix sig(3, 3);
  sig << 0.4, 0.1, 0.0, 0.0, 0.3, 0.05, 0.02, 0.0, 0.2;
  Matrix q = sig * sig.transpose();
  Matrix s = lyapunov_solve(g, q);
  CHECK((g * s + s * g.transpose() - q).norm() <= 1e-9 * q.norm());
  CHECK((s - s.transpose()).norm() < 1e-12);
}

TEST_CASE("min_real_eigenvalue: reports the smallest real part") {
  Matrix g(2, 2);
  g << 2.0, 0.0, 0.0, -0.5;
  auto [re, ev] = min_real_eigenvalue(g);
  CHECK(re == doctest::Approx(-0.5).epsilon(1e-12));
  CHECK(ev.real() == doctest::Approx(-0.5).epsilon(1e-12));
}

TEST_CASE("symmetric_sqrt: squares back to the input") {
  Matrix a(2, 2);
  a << 2.0, 0.5, 0.5, 1.0;
  Matrix r = symmetric_sqrt(a);
  CHECK((r * r - a).norm() < 1e-12);
  CHECK((r - r.transpose()).norm() < 1e-12);
}

TEST_CASE("symmetric_sqrt: clearly negative eigenvalue throws") {
  Matrix a(2, 2);
  a << -1.0, 0.0, 0.0, 1.0;
  CHECK_THROWS_AS(symmetric_sqrt(a), std::invalid_argument);
}

TEST_CASE("integrate_matrix: polynomial integrand is exact") {
  auto f = [](double x) {
    Matrix m(1, 1);
    m << 3.0 * x * x;
    return m;
  };
  CHECK(integrate_matrix(f, 0.0, 2.0)(0, 0) == doctest::Approx(8.0).epsilon(1e-10));
}

TEST_CASE("integrate_scalar: matches a known transcendental integral") {
  double v = integrate_scalar([](double x) { return std::exp(-x); }, 0.0, 3.0);
  CHECK(v == doctest::Approx(1.0 - std::exp(-3.0)).epsilon(1e-10));
}
