// SPDX-License-Identifier: Apache-2.0
//
// Lower-triangular pre-factorization S = M M* with outer diagonal entries,
// and the grid solve that yields the last row of each recursion step.
#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "specfact/laurent.hpp"
#include "specfact/scalar_factor.hpp"

namespace specfact {

struct ZetaSolveStats {
  /// Grid points where the block was numerically singular and the clamp
  /// floor was applied to its singular values.
  std::size_t regularized_points = 0;
  /// Smallest reciprocal condition estimate of the block over the grid.
  double min_rcond = 1.0;
};

/// Solves mprev(t) * (zeta_1, ..., zeta_{m-1})^*(t) = s_col(t) pointwise on
/// the grid and returns the zeta_j restricted to powers [-order, order].
std::vector<LaurentPoly> solve_zeta_row(const LaurentMatrix& mprev, std::span<const LaurentPoly> s_col,
                                        std::size_t grid, int order, double clamp_floor = 1e-12,
                                        ZetaSolveStats* stats = nullptr);

struct TriangularFactor {
  LaurentMatrix m;
  std::vector<LaurentPoly> diag_factors;
};

/// M with M(m,m) = f_m from diagonal_factors and the entries below the
/// diagonal from grid solves against the leading triangular blocks,
/// truncated to powers [-order, order].
TriangularFactor triangular_factor(const LaurentMatrix& s, const ScalarFactorParams& p, int order);

}  // namespace specfact
