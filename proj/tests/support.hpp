// SPDX-License-Identifier: Apache-2.0
//
// Random instances and reference computations shared by the test binaries.
#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "specfact/completion.hpp"
#include "specfact/laurent.hpp"

namespace specfact::testing {

inline LaurentPoly poly(int n_min, std::vector<Complex> c) { return LaurentPoly(n_min, std::move(c)); }

inline Complex cnormal(std::mt19937_64& rng) {
  std::normal_distribution<double> d(0.0, 1.0);
  return {d(rng), d(rng)};
}

/// r x r causal polynomial matrix of degree deg with integer coefficients in [lo, hi].
inline LaurentMatrix random_integer_causal(std::mt19937_64& rng, int r, int deg, int lo = -10, int hi = 10) {
  std::uniform_int_distribution<int> dist(lo, hi);
  LaurentMatrix a(static_cast<std::size_t>(r), static_cast<std::size_t>(r));
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      std::vector<Complex> c(static_cast<std::size_t>(deg + 1));
      for (auto& x : c) x = static_cast<double>(dist(rng));
      a(i, j) = LaurentPoly(0, std::move(c));
    }
  return a;
}

/// Random complex Laurent polynomial on [lo, hi].
inline LaurentPoly random_poly(std::mt19937_64& rng, int lo, int hi, double scale = 1.0) {
  std::vector<Complex> c(static_cast<std::size_t>(hi - lo + 1));
  for (auto& x : c) x = scale * cnormal(rng);
  return LaurentPoly(lo, std::move(c));
}

inline LaurentMatrix random_matrix(std::mt19937_64& rng, int rows, int cols, int lo, int hi) {
  LaurentMatrix a(static_cast<std::size_t>(rows), static_cast<std::size_t>(cols));
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) a(i, j) = random_poly(rng, lo, hi);
  return a;
}

/// Monic-at-zero polynomial prod (1 - z / root) scaled by `scale`.
inline LaurentPoly from_roots(const std::vector<Complex>& roots, Complex scale) {
  LaurentPoly p = LaurentPoly::constant(scale);
  for (const Complex& r : roots) p = mul(p, poly(0, {1.0, -1.0 / r}));
  return p;
}

/// Roots of the causal polynomial c_0 + c_1 z + ... + c_d z^d via the
/// companion matrix. Leading exact zeros must be trimmed by the caller.
inline std::vector<Complex> roots_of(const LaurentPoly& p) {
  const int d = p.n_max();
  std::vector<Complex> out;
  if (d <= 0) return out;
  Eigen::MatrixXcd comp = Eigen::MatrixXcd::Zero(d, d);
  const Complex lead = p.coeff(d);
  for (int i = 1; i < d; ++i) comp(i, i - 1) = 1.0;
  for (int i = 0; i < d; ++i) comp(i, d - 1) = -p.coeff(i) / lead;
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(comp);
  for (int i = 0; i < d; ++i) out.push_back(es.eigenvalues()(i));
  return out;
}

/// Outer polynomial with the same modulus on the circle as g, positive at 0:
/// roots inside the disk are reflected to 1 / conj(root).
inline LaurentPoly outer_oracle(const LaurentPoly& g) {
  const int d = g.n_max();
  const Complex lead = g.coeff(d);
  double mod = std::abs(lead);
  std::vector<Complex> roots;
  for (const Complex& r : roots_of(g)) {
    if (std::abs(r) < 1.0) {
      // |z - r| = |r| |z - 1/conj(r)| on the circle.
      roots.push_back(1.0 / std::conj(r));
      mod *= std::abs(r);
    } else {
      roots.push_back(r);
    }
  }
  // |z - r| = |r| |1 - z / r| on the circle; the constant is taken positive.
  Complex c = mod;
  for (const Complex& r : roots) c *= std::abs(r);
  return from_roots(roots, c);
}

/// Random causal polynomial with f(0) > 0 and all roots at modulus >= rmin.
inline LaurentPoly random_outer(std::mt19937_64& rng, int degree, double rmin = 1.2, double rmax = 3.0) {
  std::uniform_real_distribution<double> rad(rmin, rmax);
  std::uniform_real_distribution<double> ang(0.0, 2.0 * std::numbers::pi);
  std::uniform_real_distribution<double> sc(0.5, 2.0);
  std::vector<Complex> roots;
  for (int k = 0; k < degree; ++k) roots.push_back(std::polar(rad(rng), ang(rng)));
  return from_roots(roots, sc(rng));
}

/// Random CompletionInput with m rows and order N.
inline CompletionInput random_completion_input(std::mt19937_64& rng, int m, int order, double zeta_scale = 0.5) {
  CompletionInput in;
  in.m = m;
  in.order = order;
  for (int i = 0; i + 1 < m; ++i) in.zeta.push_back(random_poly(rng, -order, order, zeta_scale));
  std::uniform_int_distribution<int> deg(0, std::min(order, 6));
  in.f_plus = random_outer(rng, deg(rng));
  in.f_plus.set(0, in.f_plus.coeff(0).real());
  return in;
}

/// max |coefficient| over all entries and powers of a - b.
inline double max_coeff_diff(const LaurentMatrix& a, const LaurentMatrix& b) { return (a - b).max_abs(); }

}  // namespace specfact::testing
