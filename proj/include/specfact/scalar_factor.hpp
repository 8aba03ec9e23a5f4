// SPDX-License-Identifier: Apache-2.0
//
// Canonical (outer, positive at the origin) spectral factor of a scalar
// density, evaluated by the cepstral method on a unit-circle grid.
#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "specfact/laurent.hpp"

namespace specfact {

struct ScalarFactorParams {
  /// Grid size L; power of two.
  std::size_t grid_size = 4096;
  /// Output powers 0..out_degree; must be < L/2.
  int out_degree = 16;
  /// Samples below clamp_floor * max are raised to that floor before log.
  double clamp_floor = 1e-12;

  void validate() const;
};

/// 4 * (input degree + 1), the usual out_degree for a standalone call.
int default_out_degree(int input_degree);

struct ScalarFactorStats {
  std::size_t clamped_points = 0;
  double min_sample = 0.0;
  double max_sample = 0.0;
};

/// Factor of a Hermitian Laurent polynomial density s (c_{-n} = conj(c_n)).
/// Returns f with powers 0..out_degree, f(0) > 0 and |f|^2 ~ s on the circle.
LaurentPoly scalar_spectral_factor(const LaurentPoly& density, const ScalarFactorParams& p,
                                   ScalarFactorStats* stats = nullptr);

/// Same, from density samples on the grid (samples.size() is the grid size).
LaurentPoly scalar_spectral_factor(std::span<const double> samples, const ScalarFactorParams& p,
                                   ScalarFactorStats* stats = nullptr);

/// f_m = (det S_m)^+ / (det S_{m-1})^+, m = 1..r, where S_m is the leading
/// m x m block of s. The quotient is formed pointwise on the grid.
std::vector<LaurentPoly> diagonal_factors(const LaurentMatrix& s, const ScalarFactorParams& p,
                                          std::vector<ScalarFactorStats>* stats = nullptr);

}  // namespace specfact
