// SPDX-License-Identifier: Apache-2.0
//
// Displacement structure of the completion matrix Delta with respect to the
// upper shift Z (ones on the first superdiagonal):
//
//   Delta - Z Delta Z^* = A A^*,  A = [Lambda_1, ..., Lambda_{m-1}, E],
//
// where Lambda_i is the first column of Theta_i and E = (0, ..., 0, 1)^T.
// The generator drives an O(m N^2) Cholesky factorization (generalized
// Schur algorithm), used as an alternative to the dense O(N^3) solve.
#pragma once

#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "specfact/completion.hpp"

namespace specfact {

struct DisplacementGenerator {
  /// (N+1) x m generator; Z is implicit.
  Eigen::MatrixXcd a;
};

DisplacementGenerator generators(const CompletionSystem& sys);

/// Delta - Z Delta Z^*.
Eigen::MatrixXcd apply_rz(const Eigen::MatrixXcd& delta);

/// The unique matrix with displacement A A^*: sum_k Z^k A A^* Z^{*k}.
Eigen::MatrixXcd reconstruct_from_generator(const DisplacementGenerator& gen);

struct StructuredSolveResult {
  std::vector<Eigen::VectorXcd> solutions;
  bool fell_back = false;
  std::string warning;
};

/// Solves Delta x = rhs[j] for every j using only the generator. On a
/// breakdown of the Schur recursion, falls back to a dense Cholesky solve
/// of the reconstructed matrix and records a warning.
StructuredSolveResult structured_solve(const DisplacementGenerator& gen, std::span<const Eigen::VectorXcd> rhs);

}  // namespace specfact
