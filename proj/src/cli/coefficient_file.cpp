// SPDX-License-Identifier: Apache-2.0
#include "specfact/coefficient_file.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace specfact {

namespace {

using nlohmann::json;

int get_int(const json& doc, const char* key) {
  if (!doc.contains(key) || !doc.at(key).is_number_integer())
    throw FormatError(std::string("coefficient file: missing integer field '") + key + "'");
  return doc.at(key).get<int>();
}

double get_real(const json& v) {
  if (!v.is_number()) throw FormatError("coefficient file: coefficient parts must be numbers");
  const double x = v.get<double>();
  if (!std::isfinite(x)) throw FormatError("coefficient file: non-finite coefficient");
  return x;
}

}  // namespace

LaurentMatrix parse_coefficient_json(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw FormatError(std::string("coefficient file: invalid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw FormatError("coefficient file: top level must be an object");
  const int rows = get_int(doc, "rows");
  const int cols = get_int(doc, "cols");
  const int lo = get_int(doc, "min_power");
  const int hi = get_int(doc, "max_power");
  if (rows < 1 || cols < 1) throw FormatError("coefficient file: rows and cols must be positive");
  if (hi < lo) throw FormatError("coefficient file: max_power is below min_power");
  const auto len = static_cast<std::size_t>(hi - lo + 1);

  if (!doc.contains("entries") || !doc.at("entries").is_array() || doc.at("entries").size() != static_cast<std::size_t>(rows))
    throw FormatError("coefficient file: 'entries' must have one array per row");
  const json& entries = doc.at("entries");
  LaurentMatrix a(static_cast<std::size_t>(rows), static_cast<std::size_t>(cols));
  for (std::size_t i = 0; i < a.rows(); ++i) {
    const json& row = entries[i];
    if (!row.is_array() || row.size() != a.cols()) throw FormatError("coefficient file: row " + std::to_string(i) + " has the wrong length");
    for (std::size_t j = 0; j < a.cols(); ++j) {
      const json& e = row[j];
      if (!e.is_array() || e.size() != len)
        throw FormatError("coefficient file: entry (" + std::to_string(i) + "," + std::to_string(j) +
                          ") does not match the power window");
      std::vector<Complex> c(len);
      for (std::size_t k = 0; k < len; ++k) {
        if (!e[k].is_array() || e[k].size() != 2) throw FormatError("coefficient file: coefficients are [re, im] pairs");
        c[k] = Complex(get_real(e[k][0]), get_real(e[k][1]));
      }
      a(i, j) = LaurentPoly(lo, std::move(c));
    }
  }
  return a;
}

std::string to_coefficient_json(const LaurentMatrix& a) {
  const int lo = a.min_power();
  const int hi = a.max_power();
  json entries = json::array();
  for (std::size_t i = 0; i < a.rows(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < a.cols(); ++j) {
      json e = json::array();
      for (int n = lo; n <= hi; ++n) {
        const Complex c = a(i, j).coeff(n);
        e.push_back(json::array({c.real(), c.imag()}));
      }
      row.push_back(std::move(e));
    }
    entries.push_back(std::move(row));
  }
  json doc = {{"rows", a.rows()}, {"cols", a.cols()}, {"min_power", lo}, {"max_power", hi}, {"entries", std::move(entries)}};
  return doc.dump() + "\n";
}

LaurentMatrix read_coefficient_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_coefficient_json(ss.str());
}

void write_coefficient_file(const std::string& path, const LaurentMatrix& a) {
  std::ofstream out(path);
  if (!out) throw FormatError("cannot write '" + path + "'");
  out << to_coefficient_json(a);
  if (!out) throw FormatError("write to '" + path + "' failed");
}

}  // namespace specfact
