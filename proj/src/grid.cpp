// SPDX-License-Identifier: Apache-2.0
#include "specfact/grid.hpp"

#include <string>

#include "fft.hpp"
#include "specfact/errors.hpp"

namespace specfact {

bool is_power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

std::size_t next_power_of_two(std::size_t n) {
  std::size_t p = 1;
  while (p < n) p <<= 1;
  return p;
}

Eigen::MatrixXcd GridSamples::point(std::size_t k) const {
  Eigen::MatrixXcd m(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = at(i, j)[k];
  return m;
}

std::vector<Complex> eval_grid(const LaurentPoly& a, std::size_t grid) {
  if (!is_power_of_two(grid)) throw PreconditionError("eval_grid: grid size " + std::to_string(grid) + " is not a power of two");
  const auto l = static_cast<long long>(grid);
  std::vector<Complex> buf(grid);
  for (int n = a.n_min(); n <= a.n_max(); ++n) {
    const auto idx = static_cast<std::size_t>(((static_cast<long long>(n) % l) + l) % l);
    buf[idx] += a.coeff(n);
  }
  detail::fft_backward(buf);
  return buf;
}

GridSamples eval_grid(const LaurentMatrix& a, std::size_t grid) {
  GridSamples g;
  g.size = grid;
  g.rows = a.rows();
  g.cols = a.cols();
  g.values.reserve(a.rows() * a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) g.values.push_back(eval_grid(a(i, j), grid));
  return g;
}

LaurentPoly coeffs_from_grid(std::span<const Complex> samples, int n_min, int n_max) {
  const std::size_t grid = samples.size();
  if (!is_power_of_two(grid)) throw PreconditionError("coeffs_from_grid: grid size is not a power of two");
  const long long half = static_cast<long long>(grid) / 2;
  if (n_max < n_min || n_min <= -half || n_max >= half)
    throw PreconditionError("coeffs_from_grid: window [" + std::to_string(n_min) + ", " + std::to_string(n_max) +
                            "] does not fit grid of size " + std::to_string(grid));
  std::vector<Complex> buf(samples.begin(), samples.end());
  detail::fft_forward(buf);
  const double inv = 1.0 / static_cast<double>(grid);
  const auto l = static_cast<long long>(grid);
  std::vector<Complex> out(static_cast<std::size_t>(n_max - n_min + 1));
  for (int n = n_min; n <= n_max; ++n) {
    const auto idx = static_cast<std::size_t>(((static_cast<long long>(n) % l) + l) % l);
    out[static_cast<std::size_t>(n - n_min)] = buf[idx] * inv;
  }
  return LaurentPoly(n_min, std::move(out));
}

LaurentMatrix coeffs_from_grid(const GridSamples& g, int n_min, int n_max) {
  LaurentMatrix m(g.rows, g.cols);
  for (std::size_t i = 0; i < g.rows; ++i)
    for (std::size_t j = 0; j < g.cols; ++j) m(i, j) = coeffs_from_grid(g.at(i, j), n_min, n_max);
  return m;
}

}  // namespace specfact
