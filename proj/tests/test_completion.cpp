// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <random>

#include "specfact/completion.hpp"
#include "specfact/errors.hpp"
#include "specfact/grid.hpp"
#include "support.hpp"

using namespace specfact;
using specfact::testing::poly;

namespace {

double grid_unitarity(const LaurentMatrix& u, std::size_t grid) {
  const GridSamples g = eval_grid(u, grid);
  double worst = 0.0;
  for (std::size_t k = 0; k < grid; ++k) {
    const Eigen::MatrixXcd x = g.point(k);
    worst = std::max(worst, (x * x.adjoint() - Eigen::MatrixXcd::Identity(x.rows(), x.cols())).cwiseAbs().maxCoeff());
  }
  return worst;
}

}  // namespace

TEST_CASE("toeplitz, hankel and reciprocal series") {
  const Eigen::VectorXcd v = (Eigen::VectorXcd(3) << 1, 2, 3).finished();
  const Eigen::MatrixXcd t = upper_toeplitz(v);
  const Eigen::MatrixXcd want_t = (Eigen::MatrixXcd(3, 3) << 1, 2, 3, 0, 1, 2, 0, 0, 1).finished();
  CHECK((t - want_t).norm() == 0.0);
  const Eigen::MatrixXcd h = upper_hankel(v);
  const Eigen::MatrixXcd want_h = (Eigen::MatrixXcd(3, 3) << 1, 2, 3, 2, 3, 0, 3, 0, 0).finished();
  CHECK((h - want_h).norm() == 0.0);

  // 1 / (2 + t) = 1/2 - t/4 + t^2/8 - ...
  const Eigen::VectorXcd d = (Eigen::VectorXcd(4) << 2, 1, 0, 0).finished();
  const Eigen::VectorXcd b = reciprocal_series(d);
  CHECK(std::abs(b(0) - 0.5) < 1e-15);
  CHECK(std::abs(b(1) + 0.25) < 1e-15);
  CHECK(std::abs(b(3) + 0.0625) < 1e-15);
  CHECK((upper_toeplitz(d) * upper_toeplitz(b) - Eigen::MatrixXcd::Identity(4, 4)).norm() < 1e-15);
}

TEST_CASE("build_system: structure") {
  std::mt19937_64 rng(301);
  for (int trial = 0; trial < 5; ++trial) {
    const CompletionInput in = testing::random_completion_input(rng, 3, 6);
    const CompletionSystem sys = build_system(in);
    CHECK(sys.theta.size() == 2);
    CHECK(sys.theta_closed_form_deviation < 1e-12);
    CHECK((sys.delta - sys.delta.adjoint()).norm() == 0.0);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(sys.delta);
    CHECK(eig.eigenvalues().minCoeff() >= 1.0 - 1e-12);
    // Gamma's first column holds the negative-power coefficients of zeta.
    CHECK(sys.gamma_mat[0](2, 0) == in.zeta[0].coeff(-2));
  }
}

TEST_CASE("zeta = 0 gives the identity completion") {
  CompletionInput in;
  in.m = 2;
  in.order = 3;
  in.zeta = {LaurentPoly::constant(0.0)};
  in.f_plus = poly(0, {2, 1});
  const LaurentMatrix u = theorem2a(in);
  CHECK(testing::max_coeff_diff(u, LaurentMatrix::identity(2)) < 1e-14);
}

TEST_CASE("theorem2a on random inputs: direct checks") {
  std::mt19937_64 rng(302);
  for (int trial = 0; trial < 12; ++trial) {
    const int m = 2 + trial % 3;
    const int n = 1 + trial;
    const CompletionInput in = testing::random_completion_input(rng, m, n);
    const LaurentMatrix u = theorem2a(in);

    // Unitary with unit determinant on the circle.
    CHECK(grid_unitarity(u, 256) < 1e-10);
    const LaurentPoly det = det_laurent(u);
    CHECK((det - LaurentPoly::constant(1.0)).max_abs() < 1e-10);

    // Row structure: polynomial rows of degree <= N, last row anti-causal.
    for (std::size_t i = 0; i + 1 < u.rows(); ++i)
      for (std::size_t j = 0; j < u.cols(); ++j) {
        CHECK(negative_mass(u(i, j)) == 0.0);
        CHECK(u(i, j).n_max() <= n);
      }
    for (std::size_t j = 0; j < u.cols(); ++j) CHECK(u(u.rows() - 1, j).n_min() >= -n);

    // F U is causal with Hermitian positive definite value at 0.
    const LaurentMatrix fu = completion_matrix(in) * u;
    CHECK(fu.negative_mass() < 1e-10);
    const Eigen::MatrixXcd a0 = fu.coefficient(0);
    CHECK((a0 - a0.adjoint()).cwiseAbs().maxCoeff() < 1e-12);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(0.5 * (a0 + a0.adjoint()));
    CHECK(eig.eigenvalues().minCoeff() > 0.0);

    const CompletionCheck chk = check_completion(in, u);
    CHECK(chk.unitarity_defect < 1e-10);
    CHECK(chk.det_defect < 1e-10);
    CHECK(chk.membership_mass < 1e-10);
    CHECK(chk.structure_mass == 0.0);
  }
}

TEST_CASE("solve_columns: Gram matrix of V is constant and solvers agree") {
  std::mt19937_64 rng(303);
  for (int trial = 0; trial < 6; ++trial) {
    const CompletionInput in = testing::random_completion_input(rng, 2 + trial % 3, 10);
    const CompletionSystem sys = build_system(in);
    const SolutionBundle dense = solve_columns(sys, in, SolverKind::dense);
    const SolutionBundle fast = solve_columns(sys, in, SolverKind::structured);
    CHECK(gram_deviation(dense.v) < 1e-10);
    CHECK(testing::max_coeff_diff(dense.v, fast.v) < 1e-9 * dense.v.max_abs());
    CHECK_FALSE(fast.solver_fell_back);

    // Each column of V, with its last entry conjugated back, satisfies the
    // membership conditions.
    for (std::size_t j = 0; j < dense.v.cols(); ++j) {
      std::vector<LaurentPoly> col;
      for (std::size_t i = 0; i + 1 < dense.v.rows(); ++i) col.push_back(dense.v(i, j));
      col.push_back(conj_on_circle(dense.v(dense.v.rows() - 1, j)));
      CHECK(membership_mass(in, col) < 1e-10);
    }
  }
}

TEST_CASE("validate rejects malformed inputs") {
  CompletionInput in;
  in.m = 2;
  in.order = 2;
  in.zeta = {poly(-3, {1})};
  in.f_plus = LaurentPoly::constant(1.0);
  CHECK_THROWS_AS(in.validate(), PreconditionError);
  in.zeta = {poly(-2, {1})};
  CHECK_NOTHROW(in.validate());
  in.f_plus = LaurentPoly::constant(-1.0);
  CHECK_THROWS_AS(in.validate(), PreconditionError);
  in.f_plus = poly(0, {1, 0, 0, 1});
  CHECK_THROWS_AS(in.validate(), PreconditionError);
  in.f_plus = LaurentPoly::constant(1.0);
  in.zeta.push_back(LaurentPoly::constant(0.0));
  CHECK_THROWS_AS(build_system(in), PreconditionError);
  in.m = 1;
  CHECK_THROWS_AS(in.validate(), PreconditionError);
}
