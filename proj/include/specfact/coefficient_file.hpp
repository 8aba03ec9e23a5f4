// SPDX-License-Identifier: Apache-2.0
//
// JSON coefficient files:
//
//   {"rows": r, "cols": c, "min_power": lo, "max_power": hi,
//    "entries": [[[[re, im], ...], ...], ...]}
//
// entries[i][j][k] is the coefficient of t^(lo + k) in entry (i, j).
#pragma once

#include <string>

#include "specfact/errors.hpp"
#include "specfact/laurent.hpp"

namespace specfact {

/// Malformed coefficient file or unreadable path.
class FormatError : public Error {
 public:
  using Error::Error;
};

LaurentMatrix parse_coefficient_json(const std::string& text);
/// Zero-pads every entry to the union window. Doubles are written with
/// round-trip precision.
std::string to_coefficient_json(const LaurentMatrix& a);

LaurentMatrix read_coefficient_file(const std::string& path);
void write_coefficient_file(const std::string& path, const LaurentMatrix& a);

}  // namespace specfact
