// SPDX-License-Identifier: Apache-2.0
#include "specfact/completion.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "specfact/displacement.hpp"
#include "specfact/errors.hpp"
#include "specfact/grid.hpp"

namespace specfact {

namespace {

double mass_outside(const LaurentPoly& p, int lo, int hi) {
  double s = 0.0;
  for (int n = p.n_min(); n <= p.n_max(); ++n)
    if (n < lo || n > hi) s += std::abs(p.coeff(n));
  return s;
}

LaurentPoly causal_poly(const Eigen::VectorXcd& x) {
  return LaurentPoly(0, std::vector<Complex>(x.data(), x.data() + x.size()));
}

}  // namespace

void CompletionInput::validate() const {
  if (m < 2) throw PreconditionError("completion: m must be at least 2");
  if (order < 0) throw PreconditionError("completion: order must be nonnegative");
  if (zeta.size() != static_cast<std::size_t>(m - 1))
    throw PreconditionError("completion: expected " + std::to_string(m - 1) + " zeta entries");
  for (const auto& z : zeta)
    if (mass_outside(z, -order, order) != 0.0) throw PreconditionError("completion: zeta has powers outside [-N, N]");
  if (mass_outside(f_plus, 0, order) != 0.0) throw PreconditionError("completion: f has powers outside [0, N]");
  const Complex d0 = f_plus.coeff(0);
  if (!(d0.real() > 0.0) || std::abs(d0.imag()) > 1e-12 * std::abs(d0))
    throw PreconditionError("completion: f(0) must be real and positive");
}

LaurentMatrix completion_matrix(const CompletionInput& in) {
  const auto m = static_cast<std::size_t>(in.m);
  LaurentMatrix f = LaurentMatrix::identity(m);
  for (std::size_t j = 0; j + 1 < m; ++j) f(m - 1, j) = in.zeta[j];
  f(m - 1, m - 1) = in.f_plus;
  return f;
}

Eigen::MatrixXcd upper_toeplitz(const Eigen::VectorXcd& v) {
  const Eigen::Index n = v.size();
  Eigen::MatrixXcd t = Eigen::MatrixXcd::Zero(n, n);
  for (Eigen::Index k = 0; k < n; ++k)
    for (Eigen::Index l = k; l < n; ++l) t(k, l) = v(l - k);
  return t;
}

Eigen::MatrixXcd upper_hankel(const Eigen::VectorXcd& v) {
  const Eigen::Index n = v.size();
  Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(n, n);
  for (Eigen::Index k = 0; k < n; ++k)
    for (Eigen::Index l = 0; k + l < n; ++l) h(k, l) = v(k + l);
  return h;
}

Eigen::VectorXcd reciprocal_series(const Eigen::VectorXcd& d) {
  const Eigen::Index n = d.size();
  Eigen::VectorXcd b = Eigen::VectorXcd::Zero(n);
  if (n == 0) return b;
  const Complex inv0 = 1.0 / d(0);
  b(0) = inv0;
  for (Eigen::Index k = 1; k < n; ++k) {
    Complex acc{};
    for (Eigen::Index j = 1; j <= k; ++j) acc += d(j) * b(k - j);
    b(k) = -inv0 * acc;
  }
  return b;
}

Eigen::MatrixXcd theta_closed_form(const Eigen::VectorXcd& b, const Eigen::VectorXcd& gamma) {
  const Eigen::Index n = gamma.size();
  // Entries depend on k + l only.
  Eigen::VectorXcd eta = Eigen::VectorXcd::Zero(n);
  for (Eigen::Index s = 0; s < n; ++s)
    for (Eigen::Index j = 0; s + j < n; ++j) eta(s) += b(j) * gamma(s + j);
  return upper_hankel(eta);
}

CompletionSystem build_system(const CompletionInput& in) {
  in.validate();
  CompletionSystem sys;
  sys.m = in.m;
  sys.order = in.order;
  const Eigen::Index n = in.order + 1;

  sys.d.resize(n);
  for (Eigen::Index k = 0; k < n; ++k) sys.d(k) = in.f_plus.coeff(static_cast<int>(k));
  sys.d(0) = sys.d(0).real();
  sys.b = reciprocal_series(sys.d);
  sys.d_mat = upper_toeplitz(sys.d);
  sys.d_inv = upper_toeplitz(sys.b);

  sys.delta = Eigen::MatrixXcd::Identity(n, n);
  for (const auto& z : in.zeta) {
    // zeta(t) = sum_n gamma_n t^{-n}: gamma_n is the coefficient of t^{-n}.
    Eigen::VectorXcd gamma(n);
    for (Eigen::Index k = 0; k < n; ++k) gamma(k) = z.coeff(-static_cast<int>(k));
    Eigen::MatrixXcd gm = upper_hankel(gamma);
    Eigen::MatrixXcd theta = sys.d_inv * gm;
    const Eigen::MatrixXcd closed = theta_closed_form(sys.b, gamma);
    sys.theta_closed_form_deviation = std::max(sys.theta_closed_form_deviation, (theta - closed).cwiseAbs().maxCoeff());
    sys.delta.noalias() += theta * theta.adjoint();
    sys.gamma.push_back(std::move(gamma));
    sys.gamma_mat.push_back(std::move(gm));
    sys.theta.push_back(std::move(theta));
  }
  sys.delta = 0.5 * (sys.delta + sys.delta.adjoint()).eval();
  return sys;
}

SolutionBundle solve_columns(const CompletionSystem& sys, const CompletionInput& /*in*/, SolverKind solver) {
  const int m = sys.m;
  const Eigen::Index n = sys.order + 1;
  const Complex b0 = sys.b(0);

  // Right-hand sides of Delta * conj(X_m) = D^{-1} Gamma_j conj(D^{-1}) e_0,
  // with Gamma_m = conj(D) for the last system.
  std::vector<Eigen::VectorXcd> rhs;
  rhs.reserve(static_cast<std::size_t>(m));
  for (int j = 0; j + 1 < m; ++j) rhs.push_back(std::conj(b0) * sys.theta[static_cast<std::size_t>(j)].col(0));
  Eigen::VectorXcd last = Eigen::VectorXcd::Zero(n);
  last(0) = b0;
  rhs.push_back(last);

  SolutionBundle bundle;
  std::vector<Eigen::VectorXcd> ys;
  if (solver == SolverKind::structured) {
    auto res = structured_solve(generators(sys), rhs);
    ys = std::move(res.solutions);
    bundle.solver_fell_back = res.fell_back;
    bundle.warning = std::move(res.warning);
  } else {
    Eigen::LLT<Eigen::MatrixXcd> llt(sys.delta);
    if (llt.info() != Eigen::Success)
      throw NumericalBreakdown("solve_columns: Cholesky of Delta failed; the completion input is corrupted");
    for (const auto& r : rhs) ys.push_back(llt.solve(r));
  }

  bundle.x.resize(static_cast<std::size_t>(m));
  const auto mu = static_cast<std::size_t>(m);
  bundle.v = LaurentMatrix(mu, mu);
  for (std::size_t j = 0; j < mu; ++j) {
    auto& xj = bundle.x[j];
    xj.resize(mu);
    xj[mu - 1] = ys[j].conjugate();
    for (std::size_t i = 0; i + 1 < mu; ++i) {
      // X_i = conj(D^{-1}) conj(Gamma_i) conj(X_m) - delta_ij conj(D^{-1}) e_0
      xj[i] = (sys.theta[i] * xj[mu - 1]).conjugate();
      if (i == j) xj[i](0) -= std::conj(b0);
    }
    for (std::size_t i = 0; i + 1 < mu; ++i) bundle.v(i, j) = causal_poly(xj[i]);
    bundle.v(mu - 1, j) = conj_on_circle(causal_poly(xj[mu - 1]));
  }
  return bundle;
}

LaurentMatrix unitarize(SolutionBundle& bundle, const CompletionInput& in) {
  const Eigen::MatrixXcd v1 = bundle.v.eval(1.0);
  Eigen::PartialPivLU<Eigen::MatrixXcd> lu(v1);
  if (!(lu.rcond() > 1e-13)) throw NumericalBreakdown("unitarize: V(1) is numerically singular");
  bundle.c = (v1.adjoint() * v1).transpose();
  const LaurentMatrix u = bundle.v * lu.inverse();

  const LaurentMatrix fu = completion_matrix(in) * u;
  const Eigen::MatrixXcd fu0 = fu.coefficient(0);
  const Eigen::MatrixXcd h = fu0 * fu0.adjoint();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(0.5 * (h + h.adjoint()));
  if (eig.info() != Eigen::Success || !(eig.eigenvalues().minCoeff() > 0.0))
    throw NumericalBreakdown("unitarize: (F U)(0) is singular");
  const Eigen::MatrixXcd sqrt_h =
      eig.eigenvectors() * eig.eigenvalues().cwiseSqrt().cast<Complex>().asDiagonal() * eig.eigenvectors().adjoint();
  const Eigen::MatrixXcd w = fu0.partialPivLu().solve(sqrt_h);
  bundle.u_f = u * w;
  return bundle.u_f;
}

LaurentMatrix theorem2a(const CompletionInput& in, SolverKind solver) {
  const CompletionSystem sys = build_system(in);
  SolutionBundle bundle = solve_columns(sys, in, solver);
  return unitarize(bundle, in);
}

double membership_mass(const CompletionInput& in, const std::vector<LaurentPoly>& u) {
  const auto m = static_cast<std::size_t>(in.m);
  if (u.size() != m) throw PreconditionError("membership_mass: column length mismatch");
  double worst = 0.0;
  LaurentPoly last = in.f_plus * conj_on_circle(u[m - 1]);
  for (std::size_t i = 0; i + 1 < m; ++i) {
    const LaurentPoly cond = in.zeta[i] * u[m - 1] - in.f_plus * conj_on_circle(u[i]);
    worst = std::max(worst, negative_mass(cond));
    last += in.zeta[i] * u[i];
  }
  return std::max(worst, negative_mass(last));
}

double gram_deviation(const LaurentMatrix& v, std::size_t grid) {
  const GridSamples g = eval_grid(v, next_power_of_two(grid));
  const Eigen::MatrixXcd v1 = v.eval(1.0);
  const Eigen::MatrixXcd c1 = (v1.adjoint() * v1).transpose();
  const double scale = c1.cwiseAbs().maxCoeff();
  double worst = 0.0;
  for (std::size_t k = 0; k < g.size; ++k) {
    const Eigen::MatrixXcd vk = g.point(k);
    const Eigen::MatrixXcd ck = (vk.adjoint() * vk).transpose();
    worst = std::max(worst, (ck - c1).cwiseAbs().maxCoeff() / scale);
  }
  return worst;
}

CompletionCheck check_completion(const CompletionInput& in, const LaurentMatrix& u_f, std::size_t min_grid) {
  const auto m = static_cast<std::size_t>(in.m);
  const int n = in.order;
  CompletionCheck out;

  const std::size_t grid = next_power_of_two(std::max(min_grid, static_cast<std::size_t>(4 * (n + 1))));
  const GridSamples g = eval_grid(u_f, grid);
  const Eigen::MatrixXcd eye = Eigen::MatrixXcd::Identity(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(m));
  for (std::size_t k = 0; k < grid; ++k) {
    const Eigen::MatrixXcd uk = g.point(k);
    out.unitarity_defect = std::max(out.unitarity_defect, (uk * uk.adjoint() - eye).cwiseAbs().maxCoeff());
    out.det_defect = std::max(out.det_defect, std::abs(uk.determinant() - 1.0));
  }

  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j)
      out.structure_mass += i + 1 < m ? mass_outside(u_f(i, j), 0, n) : mass_outside(u_f(i, j), -n, 0);

  const LaurentMatrix fu = completion_matrix(in) * u_f;
  out.negative_mass = fu.negative_mass();
  const Eigen::MatrixXcd a0 = fu.coefficient(0);
  out.hermitian_at_zero = (a0 - a0.adjoint()).cwiseAbs().maxCoeff();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(0.5 * (a0 + a0.adjoint()), Eigen::EigenvaluesOnly);
  out.min_eig_at_zero = eig.eigenvalues().minCoeff();

  for (std::size_t j = 0; j < m; ++j) {
    std::vector<LaurentPoly> col(m);
    for (std::size_t i = 0; i + 1 < m; ++i) col[i] = u_f(i, j);
    col[m - 1] = conj_on_circle(u_f(m - 1, j));
    out.membership_mass = std::max(out.membership_mass, membership_mass(in, col));
  }
  return out;
}

}  // namespace specfact
