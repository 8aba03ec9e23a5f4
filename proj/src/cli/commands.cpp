// SPDX-License-Identifier: Apache-2.0
#include "specfact/cli.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <optional>
#include <random>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "specfact/coefficient_file.hpp"
#include "specfact/errors.hpp"
#include "specfact/factorizer.hpp"

namespace specfact::cli {

namespace {

using nlohmann::json;

struct FactorizeOptions {
  std::string input;
  std::string output;
  std::optional<int> order;
  std::string orders;
  std::string side = "left";
  std::string normalize = "center";
  std::size_t scalar_grid = 4096;
  double clamp = 1e-12;
  bool fast_solver = false;
  std::string report;
};

struct VerifyOptions {
  std::string density;
  std::string factor;
  std::string side = "left";
  double tol = 1e-6;
};

struct BenchOptions {
  int size = 2;
  int degree = 1;
  int trials = 1;
  int order = 32;
  std::uint64_t seed = 1;
  int jobs = 1;
  std::size_t scalar_grid = 4096;
  bool fast_solver = false;
};

std::string quote(const std::string& s) {
  std::string q = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') q += '\\';
    q += (c == '\n') ? ' ' : c;
  }
  return q + "\"";
}

Side parse_side(const std::string& s) { return s == "right" ? Side::right : Side::left; }

Normalization parse_normalization(const std::string& s) {
  if (s == "highest-upper") return Normalization::highest_upper;
  if (s == "none") return Normalization::none;
  return Normalization::canonical_center;
}

std::vector<int> parse_orders(const std::string& text) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t pos = 0;
      const int v = std::stoi(item, &pos);
      if (pos != item.size()) throw std::invalid_argument(item);
      out.push_back(v);
    } catch (const std::logic_error&) {
      throw CLI::ValidationError("--orders", "'" + text + "' is not a comma-separated list of integers");
    }
  }
  if (out.empty()) throw CLI::ValidationError("--orders", "empty list");
  return out;
}

std::string format_real(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6e", x);
  return buf;
}

json step_json(const StepDiagnostics& s) {
  return {{"m", s.m},
          {"order", s.order},
          {"delta_condition", s.delta_condition},
          {"unitarity_defect", s.unitarity_defect},
          {"det_defect", s.det_defect},
          {"negative_mass", s.negative_mass},
          {"membership_mass", s.membership_mass},
          {"min_eig_at_zero", s.min_eig_at_zero},
          {"regularized_points", s.regularized_points},
          {"min_rcond", s.min_rcond},
          {"solver_fell_back", s.solver_fell_back}};
}

json diagnostics_json(const Diagnostics& d) {
  json steps = json::array();
  for (const auto& s : d.per_step) steps.push_back(step_json(s));
  return {{"residual", d.residual},
          {"unitarity_defect", d.unitarity_defect},
          {"det_defect", d.det_defect},
          {"per_step", std::move(steps)},
          {"min_eig_at_zero", d.min_eig_at_zero},
          {"negative_mass", d.negative_mass},
          {"truncated_mass", d.truncated_mass},
          {"clamped_points", d.clamped_points},
          {"warnings", d.warnings}};
}

int cmd_factorize(const FactorizeOptions& o, std::ostream& out) {
  FactorizationConfig cfg;
  if (!o.orders.empty())
    cfg.orders = parse_orders(o.orders);
  else if (o.order)
    cfg.orders = {*o.order};
  cfg.side = parse_side(o.side);
  cfg.normalization = parse_normalization(o.normalize);
  cfg.scalar.grid_size = o.scalar_grid;
  cfg.scalar.clamp_floor = o.clamp;
  cfg.solver = o.fast_solver ? SolverKind::structured : SolverKind::dense;

  const LaurentMatrix s = read_coefficient_file(o.input);
  const FactorizationResult res = factorize(s, cfg);
  if (!o.output.empty()) write_coefficient_file(o.output, res.factor);
  if (!o.report.empty()) {
    std::ofstream rep(o.report);
    if (!rep) throw FormatError("cannot write '" + o.report + "'");
    rep << diagnostics_json(res.diagnostics).dump(2) << "\n";
  }
  out << "residual " << format_real(res.diagnostics.residual) << "\n";
  return ok;
}

int cmd_verify(const VerifyOptions& o, std::ostream& out) {
  const LaurentMatrix s = read_coefficient_file(o.density);
  const LaurentMatrix f = read_coefficient_file(o.factor);
  if (!s.square() || !f.square() || s.rows() != f.rows())
    throw PreconditionError("verify: density and factor must be square of equal size");
  const bool left = parse_side(o.side) == Side::left;
  const LaurentMatrix cand = left ? f : f.transpose();
  const LaurentMatrix target = left ? s : s.transpose();
  const double residual = residual_metric(cand, target);
  const double defect = (cand * adjoint(cand) - target).max_abs();
  out << "residual " << format_real(residual) << "\n";
  out << "max_defect " << format_real(defect) << "\n";
  out << "negative_mass " << format_real(f.negative_mass()) << "\n";
  return residual < o.tol ? ok : check_failed;
}

LaurentMatrix random_causal(int r, int degree, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> dist(-10, 10);
  LaurentMatrix a(static_cast<std::size_t>(r), static_cast<std::size_t>(r));
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      std::vector<Complex> c(static_cast<std::size_t>(degree + 1));
      for (auto& x : c) x = static_cast<double>(dist(rng));
      a(i, j) = LaurentPoly(0, std::move(c));
    }
  return a;
}

struct BenchRow {
  double seconds = 0.0;
  double residual = 0.0;
  std::string error;
};

int cmd_bench(const BenchOptions& o, std::ostream& out) {
  if (o.size < 1 || o.degree < 0 || o.trials < 0 || o.order < 1 || o.jobs < 1)
    throw PreconditionError("bench: size, order, jobs must be positive; degree, trials nonnegative");
  std::vector<BenchRow> rows(static_cast<std::size_t>(o.trials));
  std::atomic<int> next{0};
  auto worker = [&] {
    for (int t = next++; t < o.trials; t = next++) {
      std::mt19937_64 rng(o.seed + static_cast<std::uint64_t>(t));
      const LaurentMatrix a = random_causal(o.size, o.degree, rng);
      const LaurentMatrix s = a * adjoint(a);
      FactorizationConfig cfg;
      cfg.orders = {o.order};
      cfg.scalar.grid_size = o.scalar_grid;
      cfg.solver = o.fast_solver ? SolverKind::structured : SolverKind::dense;
      BenchRow& row = rows[static_cast<std::size_t>(t)];
      const auto start = std::chrono::steady_clock::now();
      try {
        row.residual = factorize(s, cfg).diagnostics.residual;
      } catch (const Error& e) {
        row.error = e.what();
      }
      row.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    }
  };
  std::vector<std::thread> pool;
  const int nthreads = std::min(o.jobs, std::max(o.trials, 1));
  for (int i = 0; i < nthreads; ++i) pool.emplace_back(worker);
  for (auto& th : pool) th.join();

  char line[160];
  out << "size\tdegree\ttrial\ttime_s\tresidual\n";
  bool failed = false;
  for (int t = 0; t < o.trials; ++t) {
    const BenchRow& row = rows[static_cast<std::size_t>(t)];
    std::snprintf(line, sizeof line, "%dx%d\t%d\t%d\t%.3f\t", o.size, o.size, o.degree, t, row.seconds);
    out << line << (row.error.empty() ? format_real(row.residual) : "failed: " + row.error) << "\n";
    failed = failed || !row.error.empty();
  }
  return failed ? numerical_error : ok;
}

void report_error(std::ostream& err, const char* kind, const std::string& msg) {
  err << "error kind=" << kind << " message=" << quote(msg) << "\n";
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Matrix spectral factorization of Laurent polynomial densities"};
  app.require_subcommand(1);

  FactorizeOptions fo;
  auto* fac = app.add_subcommand("factorize", "Compute a causal spectral factor");
  fac->add_option("--input", fo.input, "Density coefficient file")->required();
  fac->add_option("--output", fo.output, "Where to write the factor");
  auto* order_opt = fac->add_option("--order", fo.order, "Truncation order N used at every step")->check(CLI::PositiveNumber);
  fac->add_option("--orders", fo.orders, "Per-step orders N2,...,Nr")->excludes(order_opt);
  fac->add_option("--side", fo.side, "left (S = F F*) or right (S = F* F)")->check(CLI::IsMember({"left", "right"}));
  fac->add_option("--normalize", fo.normalize, "center, highest-upper or none")
      ->check(CLI::IsMember({"center", "highest-upper", "none"}));
  fac->add_option("--scalar-grid", fo.scalar_grid, "Grid size of the scalar stage (power of two)");
  fac->add_option("--clamp", fo.clamp, "Relative floor for density samples");
  fac->add_flag("--fast-solver", fo.fast_solver, "Use the displacement-structured solver");
  fac->add_option("--report", fo.report, "Write diagnostics as JSON");

  VerifyOptions vo;
  auto* ver = app.add_subcommand("verify", "Check a factor against a density");
  ver->add_option("--density", vo.density)->required();
  ver->add_option("--factor", vo.factor)->required();
  ver->add_option("--side", vo.side)->check(CLI::IsMember({"left", "right"}));
  ver->add_option("--tol", vo.tol, "Residual threshold for exit 0");

  BenchOptions bo;
  auto* ben = app.add_subcommand("bench", "Factorize random densities A A* and tabulate time and residual");
  ben->add_option("--size", bo.size);
  ben->add_option("--degree", bo.degree);
  ben->add_option("--trials", bo.trials);
  ben->add_option("--order", bo.order);
  ben->add_option("--seed", bo.seed);
  ben->add_option("--jobs", bo.jobs);
  ben->add_option("--scalar-grid", bo.scalar_grid);
  ben->add_flag("--fast-solver", bo.fast_solver);

  std::vector<std::string> rev(args.rbegin(), args.rend());
  if (!rev.empty()) rev.pop_back();
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return ok;
  } catch (const CLI::ParseError& e) {
    report_error(err, "parse", e.what());
    return parse_error;
  }

  try {
    if (fac->parsed()) return cmd_factorize(fo, out);
    if (ver->parsed()) return cmd_verify(vo, out);
    return cmd_bench(bo, out);
  } catch (const CLI::ParseError& e) {
    report_error(err, "parse", e.what());
    return parse_error;
  } catch (const FormatError& e) {
    report_error(err, "parse", e.what());
    return parse_error;
  } catch (const PreconditionError& e) {
    report_error(err, "precondition", e.what());
    return precondition_error;
  } catch (const NumericalBreakdown& e) {
    report_error(err, "numerical", e.what());
    return numerical_error;
  }
}

}  // namespace specfact::cli
