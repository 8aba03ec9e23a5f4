// SPDX-License-Identifier: Apache-2.0
//
// Matrix spectral factorization driver. Starting from the lower-triangular
// pre-factorization, step m = 2..r replaces the leading m x m block by a
// causal factor of S_m through one polynomial unitary completion.
#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "specfact/completion.hpp"
#include "specfact/laurent.hpp"
#include "specfact/scalar_factor.hpp"

namespace specfact {

enum class Side { left, right };
enum class Normalization { canonical_center, highest_upper, none };

struct FactorizationConfig {
  /// N_2..N_r, or a single N used for every step.
  std::vector<int> orders{32};
  /// Grid and clamp of the scalar stage and of the zeta solves. The driver
  /// overrides out_degree with the largest order.
  ScalarFactorParams scalar{};
  Side side = Side::left;
  Normalization normalization = Normalization::canonical_center;
  SolverKind solver = SolverKind::dense;
  /// A coefficient matrix counts as "highest" when its max entry exceeds
  /// leading_tol times the largest coefficient of the factor.
  double leading_tol = 1e-5;
  /// Keep the intermediate factors (M_m)_{m x m} in the result.
  bool record_steps = false;

  /// Order used at step m (2 <= m <= r); throws on a malformed list.
  int order_for_step(int m, int r) const;
  void validate(int r) const;
};

struct StepDiagnostics {
  int m = 0;
  int order = 0;
  /// 1 / rcond of the Cholesky factor of Delta.
  double delta_condition = 0.0;
  double unitarity_defect = 0.0;
  double det_defect = 0.0;
  double negative_mass = 0.0;
  double membership_mass = 0.0;
  double min_eig_at_zero = 0.0;
  std::size_t regularized_points = 0;
  double min_rcond = 1.0;
  bool solver_fell_back = false;
};

struct Diagnostics {
  double residual = 0.0;
  double unitarity_defect = 0.0;
  double det_defect = 0.0;
  std::vector<StepDiagnostics> per_step;
  double min_eig_at_zero = 0.0;
  /// Negative-power mass dropped when forming each causal step factor.
  double negative_mass = 0.0;
  /// Mass beyond the output window [0, deg f_1 + sum N_m].
  double truncated_mass = 0.0;
  /// Grid points raised to the clamp floor in the scalar stage, per f_m.
  std::vector<std::size_t> clamped_points;
  std::vector<std::string> warnings;
};

struct FactorizationResult {
  LaurentMatrix factor;
  Diagnostics diagnostics;
  /// (M_m)_{m x m} for m = 1..r when cfg.record_steps is set (left side,
  /// before normalization).
  std::vector<LaurentMatrix> steps;
  /// The scalar factors f_1..f_r.
  std::vector<LaurentPoly> diag_factors;
};

FactorizationResult factorize(const LaurentMatrix& s, const FactorizationConfig& cfg);

/// Constant unitary change of a spectral factor. For side = left the factor
/// is multiplied on the right (S = F F^*); for side = right on the left
/// (S = F^* F). tol is the relative threshold used to locate the highest
/// nonzero coefficient for highest_upper.
LaurentMatrix canonicalize(const LaurentMatrix& factor, Normalization mode, Side side = Side::left,
                           double tol = 1e-5);

struct SweepPoint {
  int order = 0;
  double residual = 0.0;
};

/// factorize at each order (broadcast to every step).
std::vector<SweepPoint> convergence_sweep(const LaurentMatrix& s, const FactorizationConfig& cfg,
                                          const std::vector<int>& orders);

const char* to_string(Side side);
const char* to_string(Normalization mode);

}  // namespace specfact
