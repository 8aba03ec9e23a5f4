// SPDX-License-Identifier: Apache-2.0
//
// Sampling of Laurent polynomials on the L-point unit-circle grid
// t_k = exp(2 pi i k / L) and recovery of coefficients from samples.
#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "specfact/laurent.hpp"

namespace specfact {

bool is_power_of_two(std::size_t n);
/// Smallest power of two >= n (and >= 1).
std::size_t next_power_of_two(std::size_t n);

/// Samples of an r x c Laurent matrix on the L-point grid, one vector of L
/// values per entry (row-major).
struct GridSamples {
  std::size_t size = 0;
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<std::vector<Complex>> values;

  std::vector<Complex>& at(std::size_t i, std::size_t j) { return values[i * cols + j]; }
  const std::vector<Complex>& at(std::size_t i, std::size_t j) const { return values[i * cols + j]; }
  /// The matrix value at grid point k.
  Eigen::MatrixXcd point(std::size_t k) const;
};

/// Samples of a at t_k, k = 0..L-1. Exact for any window (powers wrap mod L).
std::vector<Complex> eval_grid(const LaurentPoly& a, std::size_t grid);
GridSamples eval_grid(const LaurentMatrix& a, std::size_t grid);

/// Coefficients on [n_min, n_max] from L samples. Requires
/// -L/2 < n_min <= n_max < L/2; throws PreconditionError otherwise.
LaurentPoly coeffs_from_grid(std::span<const Complex> samples, int n_min, int n_max);
LaurentMatrix coeffs_from_grid(const GridSamples& g, int n_min, int n_max);

}  // namespace specfact
