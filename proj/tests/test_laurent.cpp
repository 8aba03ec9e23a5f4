// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <random>

#include "specfact/errors.hpp"
#include "specfact/grid.hpp"
#include "specfact/laurent.hpp"
#include "support.hpp"

using namespace specfact;
using specfact::testing::poly;

namespace {

LaurentMatrix test_density() {
  LaurentMatrix s(2, 2);
  s(0, 0) = poly(-1, {2, 6, 2});
  s(0, 1) = poly(-1, {7, 22, 11});
  s(1, 0) = poly(-1, {11, 22, 7});
  s(1, 1) = poly(-1, {38, 84, 38});
  return s;
}

}  // namespace

TEST_CASE("mul: hand-computed products") {
  CHECK(mul(poly(0, {1, 1}), poly(0, {1, -1})) == poly(0, {1, 0, -1}));
  CHECK(mul(LaurentPoly::monomial(-1), LaurentPoly::monomial(1)) == LaurentPoly::constant(1.0));
  CHECK(mul(poly(0, {2, 1}), poly(-1, {1, 2})) == poly(-1, {2, 5, 2}));
}

TEST_CASE("mul: window is the sum of windows") {
  const LaurentPoly a = poly(-2, {1, 2, 3});
  const LaurentPoly b = poly(3, {4, 5});
  const LaurentPoly c = mul(a, b);
  CHECK(c.n_min() == 1);
  CHECK(c.n_max() == 4);
  CHECK(c.coeff(1) == Complex(4));
  CHECK(c.coeff(4) == Complex(15));
}

TEST_CASE("equality ignores exact leading and trailing zeros") {
  CHECK(poly(-2, {0, 0, 1, 2, 0}) == poly(0, {1, 2}));
  CHECK_FALSE(poly(0, {1, 2}) == poly(0, {1, 2.5}));
  CHECK(approx_equal(poly(0, {1, 2}), poly(0, {1, 2 + 1e-12}), 1e-10));
}

TEST_CASE("adjoint") {
  CHECK(approx_equal(adjoint(LaurentMatrix::identity(3)), LaurentMatrix::identity(3)));
  LaurentMatrix a(1, 1);
  a(0, 0) = poly(0, {1, 2});
  CHECK(adjoint(a)(0, 0) == poly(-1, {2, 1}));

  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 10; ++trial) {
    const LaurentMatrix x = testing::random_matrix(rng, 3, 2, -2, 3);
    const LaurentMatrix y = testing::random_matrix(rng, 2, 3, -1, 2);
    CHECK(approx_equal(adjoint(adjoint(x)), x));
    // adjoint(XY) = adjoint(Y) adjoint(X): same sums in a different order.
    CHECK(approx_equal(adjoint(x * y), adjoint(y) * adjoint(x), 1e-12));
    CHECK(hermitian_on_circle(x * adjoint(x)));
  }
}

TEST_CASE("adjoint agrees with pointwise conjugate transpose on the circle") {
  std::mt19937_64 rng(5);
  const LaurentMatrix a = testing::random_matrix(rng, 2, 3, -2, 2);
  const Complex t = std::polar(1.0, 0.7);
  CHECK((adjoint(a).eval(t) - a.eval(t).adjoint()).norm() < 1e-12);
}

TEST_CASE("projections") {
  const LaurentPoly f = poly(-1, {1, 3, 1});
  CHECK(project_plus(f) == poly(0, {3, 1}));
  CHECK(project_minus(f) == poly(-1, {1, 3}));
  CHECK(project_window(poly(-2, {1, 1, 1, 1, 1}), 1) == poly(-1, {1, 1, 1}));

  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 10; ++trial) {
    const LaurentPoly g = testing::random_poly(rng, -4, 5);
    const LaurentPoly back = project_plus(g) + project_minus(g) - LaurentPoly::constant(g.coeff(0));
    CHECK(back == g);
  }
  CHECK(negative_mass(poly(-2, {1, -2, 5})) == doctest::Approx(3.0));
}

TEST_CASE("conj_on_circle") {
  const LaurentPoly f = poly(1, {Complex(1, 2), Complex(0, -1)});
  const LaurentPoly g = conj_on_circle(f);
  CHECK(g == poly(-2, {Complex(0, 1), Complex(1, -2)}));
  const Complex t = std::polar(1.0, 1.3);
  CHECK(std::abs(g.eval(t) - std::conj(f.eval(t))) < 1e-14);
}

TEST_CASE("det_laurent") {
  CHECK(det_laurent(LaurentMatrix::identity(3)) == LaurentPoly::constant(1.0));
  CHECK(approx_equal(det_laurent(test_density()), poly(-2, {-1, 0, 2, 0, -1}), 1e-12));

  std::mt19937_64 rng(17);
  for (int r : {2, 3}) {
    for (int trial = 0; trial < 5; ++trial) {
      const LaurentMatrix a = testing::random_matrix(rng, r, r, -1, 2);
      const LaurentMatrix b = testing::random_matrix(rng, r, r, 0, 2);
      const LaurentPoly lhs = det_laurent(a * b);
      const LaurentPoly rhs = mul(det_laurent(a), det_laurent(b));
      CHECK(approx_equal(lhs, rhs, 1e-12 * std::max(1.0, rhs.max_abs())));
    }
  }
}

TEST_CASE("det_laurent: Bareiss agrees with cofactor expansion and pointwise determinants") {
  std::mt19937_64 rng(23);
  for (int r : {2, 3, 4}) {
    const LaurentMatrix a = testing::random_matrix(rng, r, r, -1, 1);
    const LaurentPoly c = detail::det_cofactor(a);
    const LaurentPoly b = detail::det_bareiss(a);
    CHECK(approx_equal(c, b, 1e-10 * std::max(1.0, c.max_abs())));
    const Complex t = std::polar(1.0, 0.4);
    CHECK(std::abs(c.eval(t) - a.eval(t).determinant()) < 1e-10 * std::max(1.0, c.max_abs()));
  }
  const LaurentMatrix a6 = testing::random_matrix(rng, 6, 6, 0, 1);
  const Complex t = std::polar(1.0, 2.1);
  const LaurentPoly d6 = det_laurent(a6);
  CHECK(std::abs(d6.eval(t) - a6.eval(t).determinant()) < 1e-9 * std::max(1.0, d6.max_abs()));
}

TEST_CASE("exact_divide") {
  const LaurentPoly a = poly(-1, {1, 2, -3});
  const LaurentPoly b = poly(0, {4, 0, 1});
  CHECK(approx_equal(detail::exact_divide(mul(a, b), b), a, 1e-13));
}

TEST_CASE("matrix products with constants") {
  std::mt19937_64 rng(29);
  const LaurentMatrix a = testing::random_matrix(rng, 2, 2, -1, 1);
  Eigen::MatrixXcd c(2, 2);
  c << 1.0, Complex(0, 2), -1.0, 0.5;
  CHECK(approx_equal(a * c, a * LaurentMatrix::constant(c), 1e-14));
  CHECK(approx_equal(c * a, LaurentMatrix::constant(c) * a, 1e-14));
}

TEST_CASE("residual_metric") {
  std::mt19937_64 rng(31);
  const LaurentMatrix a = testing::random_matrix(rng, 2, 2, 0, 2);
  CHECK(residual_metric(a, a * adjoint(a)) < 1e-14);
  CHECK(residual_metric(LaurentMatrix::identity(2), LaurentMatrix::identity(2)) == 0.0);
  // E = I - 2I = -I: two coefficients of magnitude 1 among four entries.
  CHECK(residual_metric(LaurentMatrix::identity(2), LaurentMatrix::constant(2.0 * Eigen::MatrixXcd::Identity(2, 2))) ==
        doctest::Approx(0.5));
  // Window {-1, 0, 1}, 1x1: E = -(t^-1 + t) gives mean 2/3.
  LaurentMatrix s(1, 1);
  s(0, 0) = poly(-1, {1, 1, 1});
  CHECK(residual_metric(LaurentMatrix::identity(1), s) == doctest::Approx(2.0 / 3.0));
}

TEST_CASE("grid: constants and monomials") {
  const Eigen::MatrixXcd c = (Eigen::MatrixXcd(2, 2) << 1, 2, 3, Complex(0, 4)).finished();
  const GridSamples g = eval_grid(LaurentMatrix::constant(c), 8);
  for (std::size_t k = 0; k < 8; ++k) CHECK((g.point(k) - c).norm() == 0.0);

  const auto t = eval_grid(LaurentPoly::monomial(1), 8);
  for (std::size_t k = 0; k < 8; ++k)
    CHECK(std::abs(t[k] - std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(k) / 8.0)) < 1e-15);
}

TEST_CASE("grid: round trip") {
  std::mt19937_64 rng(37);
  const LaurentMatrix a = testing::random_matrix(rng, 2, 3, 0, 5);
  const LaurentMatrix back = coeffs_from_grid(eval_grid(a, 32), 0, 5);
  CHECK(testing::max_coeff_diff(a, back) <= 1e-12 * a.max_abs());

  const LaurentPoly p = testing::random_poly(rng, -7, 9);
  const auto samples = eval_grid(p, 32);
  CHECK(approx_equal(coeffs_from_grid(samples, -7, 9), p, 1e-12 * p.max_abs()));
}

TEST_CASE("grid: samples match direct evaluation") {
  std::mt19937_64 rng(41);
  const LaurentPoly p = testing::random_poly(rng, -3, 4);
  const auto s = eval_grid(p, 16);
  for (std::size_t k = 0; k < 16; ++k)
    CHECK(std::abs(s[k] - p.eval(std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(k) / 16.0))) < 1e-13);
  // Windows wider than the grid alias but still evaluate exactly.
  const LaurentPoly wide = testing::random_poly(rng, -20, 20);
  const auto w = eval_grid(wide, 8);
  CHECK(std::abs(w[3] - wide.eval(std::polar(1.0, 2.0 * std::numbers::pi * 3.0 / 8.0))) < 1e-12);
}

TEST_CASE("grid: window must fit") {
  const std::vector<Complex> s(16, 1.0);
  CHECK_THROWS_AS(coeffs_from_grid(s, -8, 0), PreconditionError);
  CHECK_THROWS_AS(coeffs_from_grid(s, 0, 8), PreconditionError);
  CHECK_NOTHROW(coeffs_from_grid(s, -7, 7));
  CHECK_THROWS_AS(eval_grid(LaurentPoly::constant(1.0), 12), PreconditionError);
}
