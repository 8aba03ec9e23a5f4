// SPDX-License-Identifier: Apache-2.0
//
// Thin wrapper over FFTW for in-place complex transforms of power-of-two
// length. Plans are created once per (length, direction) and shared; FFTW
// plan creation is serialized, execution is thread-safe.
#pragma once

#include <span>

#include "specfact/laurent.hpp"

namespace specfact::detail {

/// X_k = sum_n x_n exp(-2 pi i n k / L), unnormalized.
void fft_forward(std::span<Complex> data);
/// x_n = sum_k X_k exp(+2 pi i n k / L), unnormalized.
void fft_backward(std::span<Complex> data);

}  // namespace specfact::detail
