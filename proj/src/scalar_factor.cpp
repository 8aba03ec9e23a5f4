// SPDX-License-Identifier: Apache-2.0
#include "specfact/scalar_factor.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "fft.hpp"
#include "specfact/errors.hpp"
#include "specfact/grid.hpp"

namespace specfact {

namespace {

// Relative bounds on what counts as numerical noise in a density.
constexpr double kImagTolerance = 1e-10;
constexpr double kNegativeTolerance = 1e-8;

}  // namespace

void ScalarFactorParams::validate() const {
  if (!is_power_of_two(grid_size)) throw PreconditionError("scalar factor: grid size must be a power of two");
  if (out_degree < 0 || static_cast<std::size_t>(out_degree) >= grid_size / 2)
    throw PreconditionError("scalar factor: out_degree must lie in [0, L/2)");
  if (!(clamp_floor > 0.0) || !(clamp_floor < 1.0)) throw PreconditionError("scalar factor: clamp floor must lie in (0, 1)");
}

int default_out_degree(int input_degree) { return 4 * (std::max(input_degree, 0) + 1); }

LaurentPoly scalar_spectral_factor(const LaurentPoly& density, const ScalarFactorParams& p, ScalarFactorStats* stats) {
  p.validate();
  const auto values = eval_grid(density, p.grid_size);
  double scale = 0.0;
  for (const auto& v : values) scale = std::max(scale, std::abs(v));
  std::vector<double> real(values.size());
  for (std::size_t k = 0; k < values.size(); ++k) {
    if (std::abs(values[k].imag()) > kImagTolerance * scale)
      throw PreconditionError("scalar factor: density is not real on the unit circle");
    real[k] = values[k].real();
  }
  return scalar_spectral_factor(real, p, stats);
}

LaurentPoly scalar_spectral_factor(std::span<const double> samples, const ScalarFactorParams& p,
                                   ScalarFactorStats* stats) {
  ScalarFactorParams q = p;
  q.grid_size = samples.size();
  q.validate();
  const std::size_t grid = samples.size();

  const auto [lo_it, hi_it] = std::minmax_element(samples.begin(), samples.end());
  const double lo = *lo_it;
  const double hi = *hi_it;
  if (!std::isfinite(lo) || !std::isfinite(hi)) throw PreconditionError("scalar factor: non-finite density samples");
  if (hi <= 0.0) throw PreconditionError("scalar factor: density vanishes identically");
  if (lo < -kNegativeTolerance * hi) throw PreconditionError("scalar factor: density takes negative values");

  const double floor = q.clamp_floor * hi;
  std::vector<Complex> buf(grid);
  std::size_t clamped = 0;
  for (std::size_t k = 0; k < grid; ++k) {
    double v = samples[k];
    if (v < floor) {
      v = floor;
      ++clamped;
    }
    buf[k] = std::log(v);
  }
  if (stats != nullptr) *stats = {clamped, lo, hi};

  // Cepstrum of log s, then keep the analytic half: c0/2 + sum_{n>0} c_n t^n.
  detail::fft_forward(buf);
  const double inv = 1.0 / static_cast<double>(grid);
  buf[0] *= 0.5 * inv;
  for (std::size_t n = 1; n < grid / 2; ++n) buf[n] *= inv;
  for (std::size_t n = grid / 2; n < grid; ++n) buf[n] = 0.0;
  detail::fft_backward(buf);
  for (auto& v : buf) v = std::exp(v);

  LaurentPoly f = coeffs_from_grid(buf, 0, q.out_degree);
  // log s is real, so the constant term is real up to rounding; pin it.
  f.set(0, Complex{f.coeff(0).real(), 0.0});
  return f;
}

std::vector<LaurentPoly> diagonal_factors(const LaurentMatrix& s, const ScalarFactorParams& p,
                                          std::vector<ScalarFactorStats>* stats) {
  if (!s.square()) throw PreconditionError("diagonal_factors: matrix is not square");
  p.validate();
  const std::size_t r = s.rows();
  const std::size_t grid = p.grid_size;
  const GridSamples g = eval_grid(s, grid);

  // Leading principal minors at every grid point.
  std::vector<std::vector<double>> minors(r, std::vector<double>(grid));
  for (std::size_t k = 0; k < grid; ++k) {
    const Eigen::MatrixXcd sk = g.point(k);
    for (std::size_t m = 1; m <= r; ++m) {
      const auto mi = static_cast<Eigen::Index>(m);
      minors[m - 1][k] = sk.topLeftCorner(mi, mi).determinant().real();
    }
  }

  std::vector<LaurentPoly> out;
  out.reserve(r);
  if (stats != nullptr) stats->clear();
  std::vector<double> prev(grid, 1.0);
  for (std::size_t m = 0; m < r; ++m) {
    const auto& cur = minors[m];
    const double hi = *std::max_element(cur.begin(), cur.end());
    const double lo = *std::min_element(cur.begin(), cur.end());
    if (hi <= 0.0 || lo < -kNegativeTolerance * hi)
      throw PreconditionError("diagonal_factors: leading minor " + std::to_string(m + 1) +
                              " is not positive on the circle; input is not a spectral density");
    const double prev_floor = p.clamp_floor * *std::max_element(prev.begin(), prev.end());
    std::vector<double> ratio(grid);
    for (std::size_t k = 0; k < grid; ++k) ratio[k] = std::max(cur[k], 0.0) / std::max(prev[k], prev_floor);
    ScalarFactorStats st;
    out.push_back(scalar_spectral_factor(ratio, p, &st));
    if (stats != nullptr) stats->push_back(st);
    prev = cur;
  }
  return out;
}

}  // namespace specfact
