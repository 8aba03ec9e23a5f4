// SPDX-License-Identifier: Apache-2.0
//
// Laurent polynomials (trigonometric polynomials on the unit circle) with
// complex coefficients, and matrices of them.
//
// A LaurentPoly stores the dense coefficient run c[n_min], ..., c[n_max];
// coefficients outside the window are zero. Two polynomials are equal when
// they agree after trimming leading/trailing zeros, so windows are storage,
// not identity.
#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace specfact {

using Complex = std::complex<double>;

class LaurentPoly {
 public:
  /// The zero polynomial (window {0}).
  LaurentPoly();
  LaurentPoly(int n_min, std::vector<Complex> coeffs);

  static LaurentPoly constant(Complex c);
  static LaurentPoly monomial(int power, Complex c = 1.0);
  /// Zero coefficients over [lo, hi].
  static LaurentPoly zeros(int lo, int hi);

  int n_min() const { return n_min_; }
  int n_max() const { return n_min_ + static_cast<int>(coeffs_.size()) - 1; }
  std::size_t size() const { return coeffs_.size(); }
  std::span<const Complex> coeffs() const { return coeffs_; }

  /// Coefficient of t^n; zero outside the window.
  Complex coeff(int n) const;
  /// Sets the coefficient of t^n, growing the window if needed.
  void set(int n, Complex c);
  /// Adds c to the coefficient of t^n, growing the window if needed.
  void add_to(int n, Complex c);

  Complex eval(Complex t) const;

  /// Drops leading/trailing coefficients with |c| <= tol. Never empties.
  LaurentPoly trimmed(double tol = 0.0) const;
  /// Zero-pads (or cuts) to exactly [lo, hi].
  LaurentPoly rewindowed(int lo, int hi) const;
  bool is_zero(double tol = 0.0) const;

  /// Sum of |c_n| over the window.
  double l1_norm() const;
  double max_abs() const;

  LaurentPoly& operator+=(const LaurentPoly& other);
  LaurentPoly& operator-=(const LaurentPoly& other);
  LaurentPoly& operator*=(Complex s);

 private:
  int n_min_ = 0;
  std::vector<Complex> coeffs_;
};

LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b);
LaurentPoly operator-(LaurentPoly a, const LaurentPoly& b);
LaurentPoly operator-(LaurentPoly a);
LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b);
LaurentPoly operator*(LaurentPoly a, Complex s);
LaurentPoly operator*(Complex s, LaurentPoly a);

/// Exact convolution; window [a.n_min + b.n_min, a.n_max + b.n_max].
LaurentPoly mul(const LaurentPoly& a, const LaurentPoly& b);

/// Pointwise conjugate on the unit circle: c'_n = conj(c_{-n}).
LaurentPoly conj_on_circle(const LaurentPoly& a);

/// Keeps powers n >= 0.
LaurentPoly project_plus(const LaurentPoly& a);
/// Keeps powers n <= 0. The constant term survives both projections.
LaurentPoly project_minus(const LaurentPoly& a);
/// Keeps powers |n| <= order.
LaurentPoly project_window(const LaurentPoly& a, int order);
/// Keeps powers lo <= n <= hi.
LaurentPoly project_range(const LaurentPoly& a, int lo, int hi);

/// Sum of |c_n| over n < 0.
double negative_mass(const LaurentPoly& a);

/// Equality modulo zero padding: max_n |a_n - b_n| <= tol.
bool approx_equal(const LaurentPoly& a, const LaurentPoly& b, double tol = 0.0);
bool operator==(const LaurentPoly& a, const LaurentPoly& b);

/// Row-major matrix of Laurent polynomials.
class LaurentMatrix {
 public:
  LaurentMatrix() = default;
  /// rows x cols matrix of zero polynomials.
  LaurentMatrix(std::size_t rows, std::size_t cols);

  static LaurentMatrix identity(std::size_t n);
  /// A constant (power-0) matrix.
  static LaurentMatrix constant(const Eigen::MatrixXcd& c);
  /// Matrix whose power-n coefficient is coeffs[n - n_min].
  static LaurentMatrix from_coefficients(int n_min, const std::vector<Eigen::MatrixXcd>& coeffs);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool square() const { return rows_ == cols_; }

  LaurentPoly& operator()(std::size_t i, std::size_t j) { return entries_[i * cols_ + j]; }
  const LaurentPoly& operator()(std::size_t i, std::size_t j) const { return entries_[i * cols_ + j]; }

  /// Union power window over all entries.
  int min_power() const;
  int max_power() const;

  /// Coefficient matrix of t^n.
  Eigen::MatrixXcd coefficient(int n) const;
  Eigen::MatrixXcd eval(Complex t) const;

  LaurentMatrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const;
  void set_block(std::size_t r0, std::size_t c0, const LaurentMatrix& b);

  LaurentMatrix transpose() const;
  LaurentMatrix trimmed(double tol = 0.0) const;
  /// Applies project_range to every entry.
  LaurentMatrix project_range(int lo, int hi) const;

  /// Sum of |c| over all coefficients at powers < 0.
  double negative_mass() const;
  double max_abs() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<LaurentPoly> entries_;
};

LaurentMatrix operator+(const LaurentMatrix& a, const LaurentMatrix& b);
LaurentMatrix operator-(const LaurentMatrix& a, const LaurentMatrix& b);
LaurentMatrix operator*(const LaurentMatrix& a, const LaurentMatrix& b);
/// Right multiplication by a constant matrix.
LaurentMatrix operator*(const LaurentMatrix& a, const Eigen::MatrixXcd& c);
/// Left multiplication by a constant matrix.
LaurentMatrix operator*(const Eigen::MatrixXcd& c, const LaurentMatrix& a);

/// Conjugate transpose on the unit circle: entry (i,j) at power n is
/// conj(a(j,i) at power -n).
LaurentMatrix adjoint(const LaurentMatrix& a);

bool approx_equal(const LaurentMatrix& a, const LaurentMatrix& b, double tol = 0.0);

/// True when a(i,j) at power n equals conj(a(j,i) at power -n) within tol.
bool hermitian_on_circle(const LaurentMatrix& a, double tol = 0.0);

/// Determinant as a Laurent polynomial. Cofactor expansion up to 4x4,
/// fraction-free (Bareiss) elimination above.
LaurentPoly det_laurent(const LaurentMatrix& a);

namespace detail {
LaurentPoly det_cofactor(const LaurentMatrix& a);
LaurentPoly det_bareiss(const LaurentMatrix& a);
/// Quotient of an exact polynomial division a / b (b must divide a).
LaurentPoly exact_divide(const LaurentPoly& a, const LaurentPoly& b);
}  // namespace detail

/// Mean absolute coefficient of E = candidate * adjoint(candidate) - s over
/// all entries and the union power window of both terms.
double residual_metric(const LaurentMatrix& candidate, const LaurentMatrix& s);

}  // namespace specfact
