// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>

namespace specfact {

/// Base of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Input violates a documented precondition (shape, symmetry, window, sign).
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// A computation that is well-posed in exact arithmetic broke down numerically.
class NumericalBreakdown : public Error {
 public:
  using Error::Error;
};

}  // namespace specfact
