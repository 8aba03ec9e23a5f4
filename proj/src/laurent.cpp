// SPDX-License-Identifier: Apache-2.0
#include "specfact/laurent.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "specfact/errors.hpp"

namespace specfact {

LaurentPoly::LaurentPoly() : n_min_(0), coeffs_(1, Complex{0.0, 0.0}) {}

LaurentPoly::LaurentPoly(int n_min, std::vector<Complex> coeffs) : n_min_(n_min), coeffs_(std::move(coeffs)) {
  if (coeffs_.empty()) {
    n_min_ = 0;
    coeffs_.assign(1, Complex{});
  }
}

LaurentPoly LaurentPoly::constant(Complex c) { return LaurentPoly(0, {c}); }

LaurentPoly LaurentPoly::monomial(int power, Complex c) { return LaurentPoly(power, {c}); }

LaurentPoly LaurentPoly::zeros(int lo, int hi) {
  if (hi < lo) return LaurentPoly();
  return LaurentPoly(lo, std::vector<Complex>(static_cast<std::size_t>(hi - lo + 1)));
}

Complex LaurentPoly::coeff(int n) const {
  if (n < n_min_ || n > n_max()) return Complex{};
  return coeffs_[static_cast<std::size_t>(n - n_min_)];
}

void LaurentPoly::set(int n, Complex c) {
  if (n < n_min_) {
    coeffs_.insert(coeffs_.begin(), static_cast<std::size_t>(n_min_ - n), Complex{});
    n_min_ = n;
  } else if (n > n_max()) {
    coeffs_.resize(static_cast<std::size_t>(n - n_min_ + 1));
  }
  coeffs_[static_cast<std::size_t>(n - n_min_)] = c;
}

void LaurentPoly::add_to(int n, Complex c) { set(n, coeff(n) + c); }

Complex LaurentPoly::eval(Complex t) const {
  // Horner in t from the top, then scale by t^n_min.
  Complex acc{};
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * t + *it;
  return acc * std::pow(t, n_min_);
}

LaurentPoly LaurentPoly::trimmed(double tol) const {
  std::size_t lo = 0;
  std::size_t hi = coeffs_.size();
  while (lo < hi && std::abs(coeffs_[lo]) <= tol) ++lo;
  while (hi > lo && std::abs(coeffs_[hi - 1]) <= tol) --hi;
  if (lo == hi) return LaurentPoly();
  return LaurentPoly(n_min_ + static_cast<int>(lo),
                     std::vector<Complex>(coeffs_.begin() + static_cast<std::ptrdiff_t>(lo),
                                          coeffs_.begin() + static_cast<std::ptrdiff_t>(hi)));
}

LaurentPoly LaurentPoly::rewindowed(int lo, int hi) const {
  if (hi < lo) throw std::invalid_argument("rewindowed: empty window");
  std::vector<Complex> out(static_cast<std::size_t>(hi - lo + 1));
  for (int n = lo; n <= hi; ++n) out[static_cast<std::size_t>(n - lo)] = coeff(n);
  return LaurentPoly(lo, std::move(out));
}

bool LaurentPoly::is_zero(double tol) const {
  return std::all_of(coeffs_.begin(), coeffs_.end(), [tol](Complex c) { return std::abs(c) <= tol; });
}

double LaurentPoly::l1_norm() const {
  double s = 0.0;
  for (const auto& c : coeffs_) s += std::abs(c);
  return s;
}

double LaurentPoly::max_abs() const {
  double m = 0.0;
  for (const auto& c : coeffs_) m = std::max(m, std::abs(c));
  return m;
}

LaurentPoly& LaurentPoly::operator+=(const LaurentPoly& other) {
  const int lo = std::min(n_min_, other.n_min_);
  const int hi = std::max(n_max(), other.n_max());
  if (lo != n_min_ || hi != n_max()) *this = rewindowed(lo, hi);
  for (int n = other.n_min_; n <= other.n_max(); ++n) coeffs_[static_cast<std::size_t>(n - n_min_)] += other.coeff(n);
  return *this;
}

LaurentPoly& LaurentPoly::operator-=(const LaurentPoly& other) {
  const int lo = std::min(n_min_, other.n_min_);
  const int hi = std::max(n_max(), other.n_max());
  if (lo != n_min_ || hi != n_max()) *this = rewindowed(lo, hi);
  for (int n = other.n_min_; n <= other.n_max(); ++n) coeffs_[static_cast<std::size_t>(n - n_min_)] -= other.coeff(n);
  return *this;
}

LaurentPoly& LaurentPoly::operator*=(Complex s) {
  for (auto& c : coeffs_) c *= s;
  return *this;
}

LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b) { return a += b; }
LaurentPoly operator-(LaurentPoly a, const LaurentPoly& b) { return a -= b; }
LaurentPoly operator-(LaurentPoly a) { return a *= -1.0; }
LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) { return mul(a, b); }
LaurentPoly operator*(LaurentPoly a, Complex s) { return a *= s; }
LaurentPoly operator*(Complex s, LaurentPoly a) { return a *= s; }

LaurentPoly mul(const LaurentPoly& a, const LaurentPoly& b) {
  const auto ca = a.coeffs();
  const auto cb = b.coeffs();
  std::vector<Complex> out(ca.size() + cb.size() - 1);
  for (std::size_t i = 0; i < ca.size(); ++i) {
    if (ca[i] == Complex{}) continue;
    for (std::size_t j = 0; j < cb.size(); ++j) out[i + j] += ca[i] * cb[j];
  }
  return LaurentPoly(a.n_min() + b.n_min(), std::move(out));
}

LaurentPoly conj_on_circle(const LaurentPoly& a) {
  const auto c = a.coeffs();
  std::vector<Complex> out(c.size());
  for (std::size_t k = 0; k < c.size(); ++k) out[k] = std::conj(c[c.size() - 1 - k]);
  return LaurentPoly(-a.n_max(), std::move(out));
}

LaurentPoly project_range(const LaurentPoly& a, int lo, int hi) {
  const int l = std::max(lo, a.n_min());
  const int h = std::min(hi, a.n_max());
  if (h < l) return LaurentPoly::zeros(std::clamp(0, lo, hi), std::clamp(0, lo, hi));
  return a.rewindowed(l, h);
}

LaurentPoly project_plus(const LaurentPoly& a) { return project_range(a, 0, std::max(0, a.n_max())); }

LaurentPoly project_minus(const LaurentPoly& a) { return project_range(a, std::min(0, a.n_min()), 0); }

LaurentPoly project_window(const LaurentPoly& a, int order) { return project_range(a, -order, order); }

double negative_mass(const LaurentPoly& a) {
  double s = 0.0;
  for (int n = a.n_min(); n < 0 && n <= a.n_max(); ++n) s += std::abs(a.coeff(n));
  return s;
}

bool approx_equal(const LaurentPoly& a, const LaurentPoly& b, double tol) {
  const int lo = std::min(a.n_min(), b.n_min());
  const int hi = std::max(a.n_max(), b.n_max());
  for (int n = lo; n <= hi; ++n)
    if (std::abs(a.coeff(n) - b.coeff(n)) > tol) return false;
  return true;
}

bool operator==(const LaurentPoly& a, const LaurentPoly& b) { return approx_equal(a, b, 0.0); }

// ---------------------------------------------------------------------------

LaurentMatrix::LaurentMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), entries_(rows * cols) {}

LaurentMatrix LaurentMatrix::identity(std::size_t n) {
  LaurentMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = LaurentPoly::constant(1.0);
  return m;
}

LaurentMatrix LaurentMatrix::constant(const Eigen::MatrixXcd& c) {
  LaurentMatrix m(static_cast<std::size_t>(c.rows()), static_cast<std::size_t>(c.cols()));
  for (std::size_t i = 0; i < m.rows_; ++i)
    for (std::size_t j = 0; j < m.cols_; ++j)
      m(i, j) = LaurentPoly::constant(c(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)));
  return m;
}

LaurentMatrix LaurentMatrix::from_coefficients(int n_min, const std::vector<Eigen::MatrixXcd>& coeffs) {
  if (coeffs.empty()) throw std::invalid_argument("from_coefficients: no coefficient matrices");
  const auto r = static_cast<std::size_t>(coeffs.front().rows());
  const auto c = static_cast<std::size_t>(coeffs.front().cols());
  LaurentMatrix m(r, c);
  for (std::size_t i = 0; i < r; ++i) {
    for (std::size_t j = 0; j < c; ++j) {
      std::vector<Complex> run(coeffs.size());
      for (std::size_t k = 0; k < coeffs.size(); ++k) {
        if (static_cast<std::size_t>(coeffs[k].rows()) != r || static_cast<std::size_t>(coeffs[k].cols()) != c)
          throw std::invalid_argument("from_coefficients: inconsistent shapes");
        run[k] = coeffs[k](static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
      }
      m(i, j) = LaurentPoly(n_min, std::move(run));
    }
  }
  return m;
}

int LaurentMatrix::min_power() const {
  int lo = 0;
  bool first = true;
  for (const auto& e : entries_) {
    lo = first ? e.n_min() : std::min(lo, e.n_min());
    first = false;
  }
  return lo;
}

int LaurentMatrix::max_power() const {
  int hi = 0;
  bool first = true;
  for (const auto& e : entries_) {
    hi = first ? e.n_max() : std::max(hi, e.n_max());
    first = false;
  }
  return hi;
}

Eigen::MatrixXcd LaurentMatrix::coefficient(int n) const {
  Eigen::MatrixXcd c(static_cast<Eigen::Index>(rows_), static_cast<Eigen::Index>(cols_));
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j)
      c(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = (*this)(i, j).coeff(n);
  return c;
}

Eigen::MatrixXcd LaurentMatrix::eval(Complex t) const {
  Eigen::MatrixXcd c(static_cast<Eigen::Index>(rows_), static_cast<Eigen::Index>(cols_));
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j)
      c(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = (*this)(i, j).eval(t);
  return c;
}

LaurentMatrix LaurentMatrix::block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
  if (r0 + nr > rows_ || c0 + nc > cols_) throw std::out_of_range("LaurentMatrix::block");
  LaurentMatrix b(nr, nc);
  for (std::size_t i = 0; i < nr; ++i)
    for (std::size_t j = 0; j < nc; ++j) b(i, j) = (*this)(r0 + i, c0 + j);
  return b;
}

void LaurentMatrix::set_block(std::size_t r0, std::size_t c0, const LaurentMatrix& b) {
  if (r0 + b.rows_ > rows_ || c0 + b.cols_ > cols_) throw std::out_of_range("LaurentMatrix::set_block");
  for (std::size_t i = 0; i < b.rows_; ++i)
    for (std::size_t j = 0; j < b.cols_; ++j) (*this)(r0 + i, c0 + j) = b(i, j);
}

LaurentMatrix LaurentMatrix::transpose() const {
  LaurentMatrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

LaurentMatrix LaurentMatrix::trimmed(double tol) const {
  LaurentMatrix t = *this;
  for (auto& e : t.entries_) e = e.trimmed(tol);
  return t;
}

LaurentMatrix LaurentMatrix::project_range(int lo, int hi) const {
  LaurentMatrix t = *this;
  for (auto& e : t.entries_) e = specfact::project_range(e, lo, hi);
  return t;
}

double LaurentMatrix::negative_mass() const {
  double s = 0.0;
  for (const auto& e : entries_) s += specfact::negative_mass(e);
  return s;
}

double LaurentMatrix::max_abs() const {
  double m = 0.0;
  for (const auto& e : entries_) m = std::max(m, e.max_abs());
  return m;
}

namespace {

void require_same_shape(const LaurentMatrix& a, const LaurentMatrix& b, const char* what) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw std::invalid_argument(std::string(what) + ": shape mismatch");
}

}  // namespace

LaurentMatrix operator+(const LaurentMatrix& a, const LaurentMatrix& b) {
  require_same_shape(a, b, "operator+");
  LaurentMatrix c = a;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) += b(i, j);
  return c;
}

LaurentMatrix operator-(const LaurentMatrix& a, const LaurentMatrix& b) {
  require_same_shape(a, b, "operator-");
  LaurentMatrix c = a;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) -= b(i, j);
  return c;
}

LaurentMatrix operator*(const LaurentMatrix& a, const LaurentMatrix& b) {
  if (a.cols() != b.rows()) throw std::invalid_argument("operator*: inner dimension mismatch");
  LaurentMatrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < b.cols(); ++j) {
      LaurentPoly acc;
      for (std::size_t k = 0; k < a.cols(); ++k) acc += mul(a(i, k), b(k, j));
      c(i, j) = std::move(acc);
    }
  }
  return c;
}

LaurentMatrix operator*(const LaurentMatrix& a, const Eigen::MatrixXcd& c) {
  if (static_cast<Eigen::Index>(a.cols()) != c.rows()) throw std::invalid_argument("operator*: inner dimension mismatch");
  LaurentMatrix out(a.rows(), static_cast<std::size_t>(c.cols()));
  for (std::size_t i = 0; i < a.rows(); ++i) {
    int lo = 0, hi = 0;
    for (std::size_t k = 0; k < a.cols(); ++k) {
      lo = k == 0 ? a(i, k).n_min() : std::min(lo, a(i, k).n_min());
      hi = k == 0 ? a(i, k).n_max() : std::max(hi, a(i, k).n_max());
    }
    for (std::size_t j = 0; j < out.cols(); ++j) {
      LaurentPoly acc = LaurentPoly::zeros(lo, hi);
      for (std::size_t k = 0; k < a.cols(); ++k)
        acc += a(i, k) * c(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(j));
      out(i, j) = std::move(acc);
    }
  }
  return out;
}

LaurentMatrix operator*(const Eigen::MatrixXcd& c, const LaurentMatrix& a) {
  return (a.transpose() * c.transpose()).transpose();
}

LaurentMatrix adjoint(const LaurentMatrix& a) {
  LaurentMatrix t(a.cols(), a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) t(j, i) = conj_on_circle(a(i, j));
  return t;
}

bool approx_equal(const LaurentMatrix& a, const LaurentMatrix& b, double tol) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      if (!approx_equal(a(i, j), b(i, j), tol)) return false;
  return true;
}

bool hermitian_on_circle(const LaurentMatrix& a, double tol) {
  if (!a.square()) return false;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = i; j < a.cols(); ++j)
      if (!approx_equal(a(i, j), conj_on_circle(a(j, i)), tol)) return false;
  return true;
}

namespace detail {

LaurentPoly det_cofactor(const LaurentMatrix& a) {
  const std::size_t n = a.rows();
  if (n == 0) return LaurentPoly::constant(1.0);
  if (n == 1) return a(0, 0);
  if (n == 2) return mul(a(0, 0), a(1, 1)) - mul(a(0, 1), a(1, 0));
  LaurentPoly det;
  for (std::size_t j = 0; j < n; ++j) {
    if (a(0, j).is_zero()) continue;
    LaurentMatrix minor(n - 1, n - 1);
    for (std::size_t i = 1; i < n; ++i)
      for (std::size_t k = 0, col = 0; k < n; ++k)
        if (k != j) minor(i - 1, col++) = a(i, k);
    LaurentPoly term = mul(a(0, j), det_cofactor(minor));
    if (j % 2 == 0)
      det += term;
    else
      det -= term;
  }
  return det;
}

LaurentPoly exact_divide(const LaurentPoly& a, const LaurentPoly& b) {
  const LaurentPoly den = b.trimmed(1e-13 * b.max_abs());
  if (den.is_zero()) throw NumericalBreakdown("exact_divide: division by zero polynomial");
  LaurentPoly rem = a.trimmed(1e-13 * a.max_abs());
  if (rem.is_zero()) return LaurentPoly();
  const int q_lo = rem.n_min() - den.n_min();
  const int q_hi = rem.n_max() - den.n_max();
  if (q_hi < q_lo) return LaurentPoly();
  LaurentPoly q = LaurentPoly::zeros(q_lo, q_hi);
  const Complex lead = den.coeff(den.n_max());
  for (int p = q_hi; p >= q_lo; --p) {
    const Complex c = rem.coeff(p + den.n_max()) / lead;
    q.set(p, c);
    for (int n = den.n_min(); n <= den.n_max(); ++n) rem.add_to(p + n, -c * den.coeff(n));
  }
  return q;
}

LaurentPoly det_bareiss(const LaurentMatrix& a) {
  const std::size_t n = a.rows();
  if (n == 0) return LaurentPoly::constant(1.0);
  LaurentMatrix w = a;
  const double scale = std::max(a.max_abs(), 1e-300);
  LaurentPoly prev = LaurentPoly::constant(1.0);
  bool negate = false;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    // Pivot: first row whose entry in column k is not negligible.
    std::size_t p = k;
    while (p < n && w(p, k).is_zero(1e-12 * scale * std::max(1.0, prev.max_abs()))) ++p;
    if (p == n) return LaurentPoly();
    if (p != k) {
      for (std::size_t j = 0; j < n; ++j) std::swap(w(p, j), w(k, j));
      negate = !negate;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        LaurentPoly num = mul(w(i, j), w(k, k)) - mul(w(i, k), w(k, j));
        w(i, j) = exact_divide(num, prev);
      }
      w(i, k) = LaurentPoly();
    }
    prev = w(k, k);
  }
  LaurentPoly det = w(n - 1, n - 1);
  return negate ? -det : det;
}

}  // namespace detail

LaurentPoly det_laurent(const LaurentMatrix& a) {
  if (!a.square()) throw PreconditionError("det_laurent: matrix is not square");
  return a.rows() <= 4 ? detail::det_cofactor(a) : detail::det_bareiss(a);
}

double residual_metric(const LaurentMatrix& candidate, const LaurentMatrix& s) {
  if (candidate.rows() != s.rows() || candidate.rows() != candidate.cols() || !s.square())
    throw PreconditionError("residual_metric: dimension mismatch");
  const LaurentMatrix c = candidate.trimmed();
  const LaurentMatrix target = s.trimmed();
  const LaurentMatrix e = c * adjoint(c) - target;
  const int lo = std::min(e.min_power(), target.min_power());
  const int hi = std::max(e.max_power(), target.max_power());
  double sum = 0.0;
  for (std::size_t i = 0; i < e.rows(); ++i)
    for (std::size_t j = 0; j < e.cols(); ++j)
      for (int n = lo; n <= hi; ++n) sum += std::abs(e(i, j).coeff(n));
  const double count = static_cast<double>(e.rows() * e.cols()) * static_cast<double>(hi - lo + 1);
  return sum / count;
}

}  // namespace specfact
