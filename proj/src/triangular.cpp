// SPDX-License-Identifier: Apache-2.0
#include "specfact/triangular.hpp"

#include <algorithm>
#include <cmath>

#include "specfact/errors.hpp"
#include "specfact/grid.hpp"

namespace specfact {

namespace {

// Below this reciprocal condition number a point is re-solved through the
// SVD so the clamp floor can be applied.
constexpr double kRcondSwitch = 1e-8;

}  // namespace

std::vector<LaurentPoly> solve_zeta_row(const LaurentMatrix& mprev, std::span<const LaurentPoly> s_col,
                                        std::size_t grid, int order, double clamp_floor, ZetaSolveStats* stats) {
  const std::size_t n = mprev.rows();
  if (!mprev.square() || n == 0) throw PreconditionError("solve_zeta_row: block must be square and non-empty");
  if (s_col.size() != n) throw PreconditionError("solve_zeta_row: column length does not match block size");
  if (order < 0 || static_cast<std::size_t>(order) >= grid / 2)
    throw PreconditionError("solve_zeta_row: truncation order does not fit the grid");

  const GridSamples mg = eval_grid(mprev, grid);
  std::vector<std::vector<Complex>> sg;
  sg.reserve(n);
  for (const auto& s : s_col) sg.push_back(eval_grid(s, grid));

  // Reference scale for the clamp: largest singular value over the grid.
  double sigma_ref = 0.0;
  for (std::size_t k = 0; k < grid; ++k) sigma_ref = std::max(sigma_ref, mg.point(k).operatorNorm());
  if (!(sigma_ref > 0.0)) throw NumericalBreakdown("solve_zeta_row: block vanishes on the whole grid");
  const double floor = clamp_floor * sigma_ref;

  ZetaSolveStats st;
  std::vector<std::vector<Complex>> zeta(n, std::vector<Complex>(grid));
  Eigen::VectorXcd rhs(static_cast<Eigen::Index>(n));
  for (std::size_t k = 0; k < grid; ++k) {
    for (std::size_t i = 0; i < n; ++i) rhs(static_cast<Eigen::Index>(i)) = sg[i][k];
    const Eigen::MatrixXcd a = mg.point(k);
    Eigen::VectorXcd y;
    Eigen::PartialPivLU<Eigen::MatrixXcd> lu(a);
    if (lu.rcond() >= kRcondSwitch) {
      y = lu.solve(rhs);
      st.min_rcond = std::min(st.min_rcond, lu.rcond());
    } else {
      Eigen::JacobiSVD<Eigen::MatrixXcd> svd(a, Eigen::ComputeFullU | Eigen::ComputeFullV);
      Eigen::VectorXd sv = svd.singularValues();
      st.min_rcond = std::min(st.min_rcond, sv(0) > 0.0 ? sv(sv.size() - 1) / sv(0) : 0.0);
      bool clamped = false;
      for (Eigen::Index i = 0; i < sv.size(); ++i) {
        if (sv(i) < floor) {
          sv(i) = floor;
          clamped = true;
        }
      }
      if (clamped) ++st.regularized_points;
      const Eigen::VectorXcd w = svd.matrixU().adjoint() * rhs;
      y = svd.matrixV() * (w.array() / sv.array().cast<Complex>()).matrix();
    }
    for (std::size_t i = 0; i < n; ++i) zeta[i][k] = std::conj(y(static_cast<Eigen::Index>(i)));
  }
  if (stats != nullptr) *stats = st;

  std::vector<LaurentPoly> out;
  out.reserve(n);
  for (const auto& z : zeta) out.push_back(coeffs_from_grid(z, -order, order));
  return out;
}

TriangularFactor triangular_factor(const LaurentMatrix& s, const ScalarFactorParams& p, int order) {
  if (!s.square()) throw PreconditionError("triangular_factor: matrix is not square");
  const std::size_t r = s.rows();
  TriangularFactor out;
  out.diag_factors = diagonal_factors(s, p);
  out.m = LaurentMatrix(r, r);
  for (std::size_t i = 0; i < r; ++i) out.m(i, i) = out.diag_factors[i];
  for (std::size_t i = 1; i < r; ++i) {
    std::vector<LaurentPoly> col;
    for (std::size_t j = 0; j < i; ++j) col.push_back(s(j, i));
    const auto xi = solve_zeta_row(out.m.block(0, 0, i, i), col, p.grid_size, order, p.clamp_floor);
    for (std::size_t j = 0; j < i; ++j) out.m(i, j) = xi[j];
  }
  return out;
}

}  // namespace specfact
