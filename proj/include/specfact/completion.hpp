// SPDX-License-Identifier: Apache-2.0
//
// Polynomial unitary completion of a row-augmented identity.
//
// Given F(t) = [I_{m-1} 0; zeta_1 ... zeta_{m-1} f] with zeta_i supported
// on powers [-N, N] and f a polynomial of degree <= N with f(0) > 0, this
// module constructs U_F(t), unitary with unit determinant on the circle,
// whose first m-1 rows are polynomials in t of degree <= N and whose last
// row is the conjugate of such polynomials, such that F U_F has no negative
// powers and (F U_F)(0) is positive definite.
//
// The construction reduces the membership conditions on the negative
// Fourier coefficients to one Hermitian positive definite system
//
//   Delta = sum_i Theta_i Theta_i^* + I,   Theta_i = D^{-1} Gamma_i,
//
// with D the upper-triangular Toeplitz matrix of f's coefficients and
// Gamma_i the Hankel matrix of gamma_{i,n} = c_{-n}(zeta_i), solved for m
// right-hand sides; the m solutions are the columns of V, which becomes
// unitary after a constant right factor.
#pragma once

#include <string>
#include <vector>

#include <Eigen/Dense>

#include "specfact/laurent.hpp"

namespace specfact {

enum class SolverKind { dense, structured };

struct CompletionInput {
  int m = 2;
  int order = 0;
  std::vector<LaurentPoly> zeta;  // m-1 entries, powers within [-order, order]
  LaurentPoly f_plus;             // powers within [0, order], f_plus(0) > 0

  /// Throws PreconditionError when the window/sign constraints fail.
  void validate() const;
};

/// F(t): identity rows 1..m-1 and last row (zeta_1, ..., zeta_{m-1}, f).
LaurentMatrix completion_matrix(const CompletionInput& in);

struct CompletionSystem {
  int m = 0;
  int order = 0;
  Eigen::VectorXcd d;                   // d_n = c_n(f), n = 0..N
  Eigen::VectorXcd b;                   // power series of 1/f, n = 0..N
  std::vector<Eigen::VectorXcd> gamma;  // gamma_{i,n} = c_{-n}(zeta_i)
  Eigen::MatrixXcd d_mat;
  Eigen::MatrixXcd d_inv;
  std::vector<Eigen::MatrixXcd> gamma_mat;
  std::vector<Eigen::MatrixXcd> theta;  // D^{-1} Gamma_i
  Eigen::MatrixXcd delta;
  /// max |D^{-1} Gamma_i - closed form| over all i, entries.
  double theta_closed_form_deviation = 0.0;
};

/// Upper-triangular Toeplitz matrix with first row v.
Eigen::MatrixXcd upper_toeplitz(const Eigen::VectorXcd& v);
/// Hankel matrix H[k,l] = v[k+l] for k+l <= N, zero below the anti-diagonal.
Eigen::MatrixXcd upper_hankel(const Eigen::VectorXcd& v);
/// Power-series coefficients of 1/f up to degree N from d_0..d_N.
Eigen::VectorXcd reciprocal_series(const Eigen::VectorXcd& d);
/// Theta[k,l] = sum_{n=0}^{N-(k+l)} b_n gamma_{k+l+n}, zero for k+l > N.
Eigen::MatrixXcd theta_closed_form(const Eigen::VectorXcd& b, const Eigen::VectorXcd& gamma);

CompletionSystem build_system(const CompletionInput& in);

struct SolutionBundle {
  /// x[j][i] = X_i^j, the coefficient vector of v_{ij}, j-th system.
  std::vector<std::vector<Eigen::VectorXcd>> x;
  LaurentMatrix v;
  /// Gram matrix (V^* V)^T, constant on the circle.
  Eigen::MatrixXcd c;
  LaurentMatrix u_f;
  /// Set when the structured solver broke down and the dense path was used.
  bool solver_fell_back = false;
  std::string warning;
};

/// Solves the m block systems and assembles V.
SolutionBundle solve_columns(const CompletionSystem& sys, const CompletionInput& in, SolverKind solver);

/// U(t) = V(t) V(1)^{-1}, then the constant unitary factor that makes
/// (F U_F)(0) Hermitian positive definite. Fills bundle.c and bundle.u_f.
LaurentMatrix unitarize(SolutionBundle& bundle, const CompletionInput& in);

/// build_system, solve_columns, unitarize.
LaurentMatrix theorem2a(const CompletionInput& in, SolverKind solver = SolverKind::dense);

struct CompletionCheck {
  double unitarity_defect = 0.0;  // max over grid of max |U U^* - I|
  double det_defect = 0.0;        // max over grid of |det U - 1|
  double structure_mass = 0.0;    // mass outside the required windows
  double negative_mass = 0.0;     // negative-power mass of F U_F
  double min_eig_at_zero = 0.0;   // smallest eigenvalue of (F U_F)(0)
  double hermitian_at_zero = 0.0; // max |A - A^*| for A = (F U_F)(0)
  double membership_mass = 0.0;   // worst negative-power mass of the m conditions
};

/// Numerical postconditions of a completion, with grid checks on
/// max(min_grid, 4(N+1)) points rounded up to a power of two.
CompletionCheck check_completion(const CompletionInput& in, const LaurentMatrix& u_f, std::size_t min_grid = 128);

/// Negative-power mass of each of the m membership conditions for a
/// modified column (u_1, ..., u_{m-1}, u_m), all u causal. Returns the max.
double membership_mass(const CompletionInput& in, const std::vector<LaurentPoly>& modified_column);

/// max over the grid of max |C(t) - C(1)| / max |C(1)|, C(t) = (V^* V)^T.
double gram_deviation(const LaurentMatrix& v, std::size_t grid = 64);

}  // namespace specfact
