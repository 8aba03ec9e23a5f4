// SPDX-License-Identifier: Apache-2.0
#include "specfact/displacement.hpp"

#include <cmath>

#include "specfact/errors.hpp"

namespace specfact {

DisplacementGenerator generators(const CompletionSystem& sys) {
  const Eigen::Index n = sys.order + 1;
  DisplacementGenerator gen;
  gen.a = Eigen::MatrixXcd::Zero(n, sys.m);
  for (int i = 0; i + 1 < sys.m; ++i) gen.a.col(i) = sys.theta[static_cast<std::size_t>(i)].col(0);
  gen.a(n - 1, sys.m - 1) = 1.0;
  return gen;
}

Eigen::MatrixXcd apply_rz(const Eigen::MatrixXcd& delta) {
  if (delta.rows() != delta.cols()) throw PreconditionError("apply_rz: matrix is not square");
  Eigen::MatrixXcd out = delta;
  const Eigen::Index n = delta.rows();
  if (n > 1) out.topLeftCorner(n - 1, n - 1) -= delta.bottomRightCorner(n - 1, n - 1);
  return out;
}

Eigen::MatrixXcd reconstruct_from_generator(const DisplacementGenerator& gen) {
  const Eigen::Index n = gen.a.rows();
  const Eigen::MatrixXcd aa = gen.a * gen.a.adjoint();
  Eigen::MatrixXcd delta = aa;
  // (Z^k M Z^{*k})[i,j] = M[i+k, j+k]; accumulate from the bottom-right.
  for (Eigen::Index i = n - 2; i >= 0; --i)
    for (Eigen::Index j = n - 2; j >= 0; --j) delta(i, j) += delta(i + 1, j + 1);
  return delta;
}

namespace {

std::vector<Eigen::VectorXcd> dense_solve(const Eigen::MatrixXcd& delta, std::span<const Eigen::VectorXcd> rhs) {
  Eigen::LLT<Eigen::MatrixXcd> llt(delta);
  if (llt.info() != Eigen::Success) throw NumericalBreakdown("structured_solve: dense fallback failed, matrix is not positive definite");
  std::vector<Eigen::VectorXcd> out;
  out.reserve(rhs.size());
  for (const auto& b : rhs) out.push_back(llt.solve(b));
  return out;
}

}  // namespace

StructuredSolveResult structured_solve(const DisplacementGenerator& gen, std::span<const Eigen::VectorXcd> rhs) {
  const Eigen::Index n = gen.a.rows();
  const Eigen::Index m = gen.a.cols();
  for (const auto& b : rhs)
    if (b.size() != n) throw PreconditionError("structured_solve: right-hand side has the wrong length");

  // Reversing the index order turns the upper shift into the lower shift, for
  // which the Schur recursion peels Cholesky columns from the top.
  Eigen::MatrixXcd g = gen.a.colwise().reverse();
  Eigen::MatrixXcd chol = Eigen::MatrixXcd::Zero(n, n);
  const double scale = 1.0 + gen.a.norm();
  Eigen::VectorXcd essential(m > 1 ? m - 1 : 1);
  std::vector<Complex> workspace(static_cast<std::size_t>(n));

  StructuredSolveResult result;
  for (Eigen::Index k = 0; k < n; ++k) {
    // Rotate the generator so that row k is (beta, 0, ..., 0).
    const Eigen::VectorXcd row = g.row(k).adjoint();
    Complex tau;
    double beta = 0.0;
    if (m > 1) {
      auto ess = essential.head(m - 1);
      row.makeHouseholder(ess, tau, beta);
      // H x = beta e_0 for x = row^*, so row * H^* = beta e_0^T.
      g.bottomRows(n - k).applyHouseholderOnTheRight(ess, std::conj(tau), workspace.data());
    } else {
      beta = std::abs(row(0));
      if (beta > 0.0) g.bottomRows(n - k).col(0) *= std::conj(g(k, 0)) / beta;
    }
    if (!std::isfinite(beta) || std::abs(beta) < 1e-7 * scale) {
      result.fell_back = true;
      result.warning = "structured_solve: generator recursion broke down at step " + std::to_string(k) +
                       "; used dense Cholesky instead";
      result.solutions = dense_solve(reconstruct_from_generator(gen), rhs);
      return result;
    }
    const double sign = beta < 0.0 ? -1.0 : 1.0;
    chol.col(k).tail(n - k) = sign * g.col(0).tail(n - k);
    // Shift the pivot column down by one.
    for (Eigen::Index i = n - 1; i > k; --i) g(i, 0) = g(i - 1, 0);
    g(k, 0) = 0.0;
  }

  const auto lower = chol.triangularView<Eigen::Lower>();
  result.solutions.reserve(rhs.size());
  for (const auto& b : rhs) {
    Eigen::VectorXcd y = b.reverse();
    lower.solveInPlace(y);
    lower.adjoint().solveInPlace(y);
    result.solutions.push_back(y.reverse());
  }
  return result;
}

}  // namespace specfact
