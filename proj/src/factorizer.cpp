// SPDX-License-Identifier: Apache-2.0
#include "specfact/factorizer.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "specfact/errors.hpp"
#include "specfact/triangular.hpp"

namespace specfact {

namespace {

enum class LeftMode { none, center, highest_upper, highest_lower };

Eigen::MatrixXcd phase_fix(const Eigen::MatrixXcd& t, bool reversed) {
  const Eigen::Index n = t.rows();
  Eigen::MatrixXcd phi = Eigen::MatrixXcd::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const Eigen::Index k = reversed ? n - 1 - i : i;
    const Complex d = t(k, k);
    phi(i, i) = std::abs(d) > 0.0 ? d / std::abs(d) : Complex(1.0);
  }
  return phi;
}

Eigen::MatrixXcd highest_coefficient(const LaurentMatrix& f, double tol, const char* mode) {
  const double scale = f.max_abs();
  if (!(scale > 0.0)) throw PreconditionError(std::string("canonicalize(") + mode + "): factor is zero");
  for (int n = f.max_power(); n >= f.min_power(); --n) {
    Eigen::MatrixXcd c = f.coefficient(n);
    if (c.cwiseAbs().maxCoeff() > tol * scale) return c;
  }
  throw PreconditionError(std::string("canonicalize(") + mode + "): factor is zero");
}

void require_nonsingular(const Eigen::MatrixXcd& a, const char* mode, const char* what) {
  const Eigen::VectorXd sv = Eigen::JacobiSVD<Eigen::MatrixXcd>(a).singularValues();
  if (!(sv(sv.size() - 1) > 1e-12 * sv(0)))
    throw PreconditionError(std::string("canonicalize(") + mode + "): " + what + " is singular");
}

// Right multiplication by a constant unitary W chosen by mode.
LaurentMatrix canonicalize_left(const LaurentMatrix& f, LeftMode mode, double tol) {
  switch (mode) {
    case LeftMode::none:
      return f;
    case LeftMode::center: {
      const Eigen::MatrixXcd f0 = f.coefficient(0);
      require_nonsingular(f0, "center", "factor(0)");
      const Eigen::MatrixXcd h = f0 * f0.adjoint();
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(0.5 * (h + h.adjoint()));
      const Eigen::MatrixXcd root = eig.eigenvectors() *
                                    eig.eigenvalues().cwiseMax(0.0).cwiseSqrt().cast<Complex>().asDiagonal() *
                                    eig.eigenvectors().adjoint();
      return f * f0.partialPivLu().solve(root);
    }
    case LeftMode::highest_lower: {
      // H^* = Q T gives H Q = T^*, lower triangular.
      const Eigen::MatrixXcd h = highest_coefficient(f, tol, "highest-upper");
      require_nonsingular(h, "highest-upper", "leading coefficient");
      Eigen::HouseholderQR<Eigen::MatrixXcd> qr(h.adjoint());
      const Eigen::MatrixXcd t = qr.matrixQR().triangularView<Eigen::Upper>();
      const Eigen::MatrixXcd q = qr.householderQ();
      return f * (q * phase_fix(t, false));
    }
    case LeftMode::highest_upper: {
      // Same with the exchange matrix J: J H^* J = Q T gives H (J Q J) = J T^* J, upper triangular.
      const Eigen::MatrixXcd h = highest_coefficient(f, tol, "highest-upper");
      require_nonsingular(h, "highest-upper", "leading coefficient");
      const Eigen::MatrixXcd hr = h.adjoint().colwise().reverse().rowwise().reverse();
      Eigen::HouseholderQR<Eigen::MatrixXcd> qr(hr);
      const Eigen::MatrixXcd t = qr.matrixQR().triangularView<Eigen::Upper>();
      const Eigen::MatrixXcd q = qr.householderQ();
      const Eigen::MatrixXcd jqj = q.colwise().reverse().rowwise().reverse();
      return f * (jqj * phase_fix(t, true));
    }
  }
  return f;
}

LeftMode left_mode(Normalization mode, Side side) {
  switch (mode) {
    case Normalization::none:
      return LeftMode::none;
    case Normalization::canonical_center:
      return LeftMode::center;
    case Normalization::highest_upper:
      return side == Side::left ? LeftMode::highest_upper : LeftMode::highest_lower;
  }
  return LeftMode::none;
}

LaurentMatrix embed(const LaurentMatrix& k) {
  const std::size_t n = k.rows();
  LaurentMatrix out = LaurentMatrix::identity(n + 1);
  out.set_block(0, 0, k);
  return out;
}

}  // namespace

const char* to_string(Side side) { return side == Side::left ? "left" : "right"; }

const char* to_string(Normalization mode) {
  switch (mode) {
    case Normalization::canonical_center:
      return "center";
    case Normalization::highest_upper:
      return "highest-upper";
    case Normalization::none:
      return "none";
  }
  return "none";
}

int FactorizationConfig::order_for_step(int m, int r) const {
  if (orders.size() == 1) return orders.front();
  if (m < 2 || m > r) throw PreconditionError("factorize: step index out of range");
  return orders[static_cast<std::size_t>(m - 2)];
}

void FactorizationConfig::validate(int r) const {
  if (r < 1) throw PreconditionError("factorize: matrix must have at least one row");
  if (orders.empty()) throw PreconditionError("factorize: no truncation order given");
  if (orders.size() != 1 && orders.size() != static_cast<std::size_t>(r - 1))
    throw PreconditionError("factorize: expected 1 or " + std::to_string(r - 1) + " orders, got " +
                            std::to_string(orders.size()));
  for (int n : orders)
    if (n < 1) throw PreconditionError("factorize: orders must be positive");
  if (!(leading_tol > 0.0 && leading_tol < 1.0)) throw PreconditionError("factorize: leading_tol must lie in (0, 1)");
  scalar.validate();
}

LaurentMatrix canonicalize(const LaurentMatrix& factor, Normalization mode, Side side, double tol) {
  if (!factor.square()) throw PreconditionError("canonicalize: factor is not square");
  if (side == Side::left) return canonicalize_left(factor, left_mode(mode, side), tol);
  return canonicalize_left(factor.transpose(), left_mode(mode, side), tol).transpose();
}

FactorizationResult factorize(const LaurentMatrix& s, const FactorizationConfig& cfg) {
  if (!s.square()) throw PreconditionError("factorize: matrix is not square");
  const int r = static_cast<int>(s.rows());
  cfg.validate(r);
  const double scale = std::max(1.0, s.max_abs());
  if (!hermitian_on_circle(s, 1e-10 * scale)) throw PreconditionError("factorize: matrix is not Hermitian on the circle");

  const LaurentMatrix se = cfg.side == Side::left ? s : s.transpose();

  int max_order = 0;
  int order_sum = 0;
  for (int m = 2; m <= r; ++m) {
    const int n = cfg.order_for_step(m, r);
    max_order = std::max(max_order, n);
    order_sum += n;
  }
  if (r == 1) max_order = cfg.orders.front();

  ScalarFactorParams sp = cfg.scalar;
  sp.out_degree = max_order;
  if (static_cast<std::size_t>(max_order) >= sp.grid_size / 2)
    throw PreconditionError("factorize: truncation order " + std::to_string(max_order) + " does not fit scalar grid " +
                            std::to_string(sp.grid_size));

  FactorizationResult res;
  Diagnostics& diag = res.diagnostics;
  std::vector<ScalarFactorStats> sstats;
  res.diag_factors = diagonal_factors(se, sp, &sstats);
  for (const auto& st : sstats) {
    diag.clamped_points.push_back(st.clamped_points);
    if (st.clamped_points > 0)
      diag.warnings.push_back("scalar stage clamped " + std::to_string(st.clamped_points) +
                              " grid samples; the density has (near) zeros on the circle");
  }
  diag.min_eig_at_zero = std::max(0.0, res.diag_factors[0].coeff(0).real());

  LaurentMatrix k(1, 1);
  k(0, 0) = res.diag_factors[0];
  if (cfg.record_steps) res.steps.push_back(k);

  for (int m = 2; m <= r; ++m) {
    const auto mu = static_cast<std::size_t>(m);
    const int n = cfg.order_for_step(m, r);
    StepDiagnostics sd;
    sd.m = m;
    sd.order = n;

    std::vector<LaurentPoly> col;
    for (std::size_t i = 0; i + 1 < mu; ++i) col.push_back(se(i, mu - 1));
    ZetaSolveStats zs;
    CompletionInput in;
    in.m = m;
    in.order = n;
    in.zeta = solve_zeta_row(k, col, sp.grid_size, n, sp.clamp_floor, &zs);
    in.f_plus = project_range(res.diag_factors[mu - 1], 0, n);
    sd.regularized_points = zs.regularized_points;
    sd.min_rcond = zs.min_rcond;

    const CompletionSystem sys = build_system(in);
    Eigen::LLT<Eigen::MatrixXcd> llt(sys.delta);
    if (llt.info() != Eigen::Success) throw NumericalBreakdown("factorize: Delta is not positive definite at step " + std::to_string(m));
    sd.delta_condition = 1.0 / llt.rcond();

    SolutionBundle bundle = solve_columns(sys, in, cfg.solver);
    if (bundle.solver_fell_back) {
      sd.solver_fell_back = true;
      diag.warnings.push_back("step " + std::to_string(m) + ": " + bundle.warning);
    }
    const LaurentMatrix uf = unitarize(bundle, in);
    const CompletionCheck chk = check_completion(in, uf);
    sd.unitarity_defect = chk.unitarity_defect;
    sd.det_defect = chk.det_defect;
    sd.negative_mass = chk.negative_mass;
    sd.membership_mass = chk.membership_mass;
    sd.min_eig_at_zero = chk.min_eig_at_zero;

    const LaurentMatrix fu = completion_matrix(in) * uf;
    diag.negative_mass += fu.negative_mass();
    k = embed(k) * fu.project_range(0, fu.max_power());
    if (cfg.record_steps) res.steps.push_back(k);

    diag.unitarity_defect = std::max(diag.unitarity_defect, sd.unitarity_defect);
    diag.det_defect = std::max(diag.det_defect, sd.det_defect);
    diag.min_eig_at_zero = m == 2 ? sd.min_eig_at_zero : std::min(diag.min_eig_at_zero, sd.min_eig_at_zero);
    diag.per_step.push_back(sd);
  }

  const int hi = max_order + order_sum;
  LaurentMatrix out = k.project_range(0, hi);
  diag.truncated_mass = 0.0;
  for (std::size_t i = 0; i < k.rows(); ++i)
    for (std::size_t j = 0; j < k.cols(); ++j)
      for (int p = k(i, j).n_min(); p <= k(i, j).n_max(); ++p)
        if (p > hi) diag.truncated_mass += std::abs(k(i, j).coeff(p));

  out = canonicalize_left(out, left_mode(cfg.normalization, cfg.side), cfg.leading_tol);
  if (cfg.side == Side::left) {
    diag.residual = residual_metric(out, s);
    res.factor = std::move(out);
  } else {
    diag.residual = residual_metric(out, se);
    res.factor = out.transpose();
  }
  return res;
}

std::vector<SweepPoint> convergence_sweep(const LaurentMatrix& s, const FactorizationConfig& cfg,
                                          const std::vector<int>& orders) {
  std::vector<SweepPoint> out;
  out.reserve(orders.size());
  for (int n : orders) {
    FactorizationConfig c = cfg;
    c.orders = {n};
    out.push_back({n, factorize(s, c).diagnostics.residual});
  }
  return out;
}

}  // namespace specfact
