#include "qent/cli.hpp"

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>

#include <unistd.h>

#include <CLI11.hpp>
#include <json.hpp>

#include "qent/entropy.hpp"
#include "qent/error.hpp"
#include "qent/io.hpp"
#include "qent/oracles.hpp"
#include "qent/verify.hpp"

namespace qent {

namespace {

int exit_code_for(ErrorCode code) {
  switch (code) {
  case ErrorCode::ParseError: return kExitParse;
  case ErrorCode::EmptyMatrix:
  case ErrorCode::NotHermitian:
  case ErrorCode::TraceNotOne:
  case ErrorCode::NotPSD:
  case ErrorCode::NoConvergence:
  case ErrorCode::InvalidSpectrum:
  case ErrorCode::DegenerateContour:
  case ErrorCode::InvariantViolation: return kExitValidation;
  case ErrorCode::CapExceeded: return kExitCap;
  case ErrorCode::InvalidR:
  case ErrorCode::InvalidIndex:
  case ErrorCode::AlphaOutOfRange:
  case ErrorCode::TooFewSamples:
  case ErrorCode::Usage: return kExitUsage;
  }
  return kExitUsage;
}

bool use_color(const std::ostream &err) {
  const char *no_color = std::getenv("NO_COLOR");
  return &err == &std::cerr && isatty(STDERR_FILENO) && !(no_color && *no_color);
}

std::uint64_t resolve_seed(const std::optional<std::uint64_t> &seed, std::ostream &err) {
  if (seed) return *seed;
  std::random_device rd;
  const std::uint64_t drawn = (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
  err << "seed: " << drawn << "\n";
  return drawn;
}

void emit(const std::string &text, const std::string &output, std::ostream &out) {
  if (output.empty()) {
    out << text;
    return;
  }
  std::ofstream f(output);
  if (!f) throw Error(ErrorCode::Usage, "cannot write '" + output + "'");
  f << text;
}

} // namespace

int run_cli(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
  CLI::App app{"Entropy, subentropy and the intermediate R family of quantum states", "qent"};
  app.require_subcommand(1);

  std::string input, output, format = "json", alpha_grid, method, suite = "all", quantity;
  std::optional<int> r_opt;
  std::optional<double> alpha_opt;
  std::optional<std::uint64_t> seed_opt;
  std::uint64_t samples = 100000, trials = 200;
  int nodes = 512, n = 4, resolution = 10;

  auto *compute = app.add_subcommand("compute", "S, Q, every R_r and optional R_alpha samples");
  compute->add_option("--input", input, "JSON input document")->required();
  compute->add_option("--output", output, "write here instead of stdout");
  compute->add_option("--format", format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
  compute->add_option("--alpha-grid", alpha_grid, "start:stop:step");

  auto *oracle = app.add_subcommand("oracle", "independent numerical evaluation");
  oracle->add_option("--input", input, "JSON input document")->required();
  oracle->add_option("--output", output, "write here instead of stdout");
  oracle->add_option("--method", method, "contour, simplex or haar")
      ->required()
      ->check(CLI::IsMember({"contour", "simplex", "haar"}));
  oracle->add_option("--r", r_opt, "index r of R_r");
  oracle->add_option("--alpha", alpha_opt, "interpolation parameter (contour only)");
  oracle->add_option("--samples", samples, "Monte Carlo sample count");
  oracle->add_option("--seed", seed_opt, "64-bit seed");
  oracle->add_option("--nodes", nodes, "contour quadrature nodes");

  auto *check = app.add_subcommand("check", "run property suites; JSON lines out");
  check->add_option("--suite", suite, "chain, invariance, coefficients, concavity, oracles, additivity, all");
  check->add_option("--n", n, "dimension");
  check->add_option("--trials", trials, "random trials per suite");
  check->add_option("--seed", seed_opt, "64-bit seed");

  auto *surf = app.add_subcommand("surface", "CSV grid over the n = 3 simplex");
  surf->add_option("--quantity", quantity, "S, Q, R:r or Ralpha:x")->required();
  surf->add_option("--resolution", resolution, "grid steps per edge");
  surf->add_option("--output", output, "write here instead of stdout");

  std::vector<std::string> reversed(args.rbegin(), args.rend() - (args.empty() ? 0 : 1));
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp &) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp &) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError &e) {
    err << "usage error: " << e.what() << "\n" << app.help();
    return kExitUsage;
  }

  try {
    if (*compute) {
      const Spectrum s = io::to_spectrum(io::read_input_file(input));
      std::vector<double> grid;
      if (!alpha_grid.empty()) grid = io::parse_alpha_grid(alpha_grid);
      const EntropyReport rep = full_report(s, grid);
      emit(format == "csv" ? io::report_to_csv(rep) : io::report_to_json(rep) + "\n", output, out);
      return kExitOk;
    }

    if (*oracle) {
      const Spectrum s = io::to_spectrum(io::read_input_file(input));
      nlohmann::json j;
      OracleEstimate est;
      std::optional<double> closed;
      auto closed_or_none = [&](auto fn) -> std::optional<double> {
        try {
          return fn();
        } catch (const Error &e) {
          if (e.code() == ErrorCode::CapExceeded) return std::nullopt;
          throw;
        }
      };
      if (method == "contour") {
        if (r_opt.has_value() == alpha_opt.has_value())
          throw Error(ErrorCode::Usage, "contour needs exactly one of --r or --alpha");
        ContourConfig cfg;
        cfg.nodes = nodes;
        if (r_opt) {
          est = contour_r(s, *r_opt, cfg);
          closed = closed_or_none([&] { return intermediate_r(s, *r_opt); });
        } else {
          const double a = *alpha_opt;
          if (!(a >= 0.0 && a <= 1.0)) throw Error(ErrorCode::AlphaOutOfRange, "alpha must lie in [0, 1]");
          est = a == 0.0 ? contour_r(s, 1, cfg) : contour_interpolant(s, a, cfg);
          closed = closed_or_none([&] { return interpolant(s, a); });
          j["alpha"] = a;
        }
      } else if (method == "simplex") {
        if (!r_opt) throw Error(ErrorCode::Usage, "simplex needs --r");
        if (alpha_opt) throw Error(ErrorCode::Usage, "--alpha applies to the contour method only");
        const std::uint64_t seed = resolve_seed(seed_opt, err);
        est = simplex_mc(s, *r_opt, samples, seed);
        closed = closed_or_none([&] { return intermediate_r(s, *r_opt); });
        j["seed"] = seed;
      } else {
        if (r_opt || alpha_opt) throw Error(ErrorCode::Usage, "haar takes neither --r nor --alpha");
        const std::uint64_t seed = resolve_seed(seed_opt, err);
        est = haar_average_information(s, samples, seed);
        closed = closed_or_none([&] { return subentropy(s); });
        j["seed"] = seed;
      }
      if (r_opt) j["r"] = *r_opt;
      j["method"] = std::string(to_string(est.method));
      j["value"] = est.value;
      j["stderr"] = est.std_error;
      j["samples"] = est.samples;
      if (est.method != OracleMethod::contour) {
        j["min_sample"] = est.min_sample;
        j["max_sample"] = est.max_sample;
      }
      if (closed) {
        j["closed_form"] = *closed;
        const double diff = std::abs(est.value - *closed);
        if (est.std_error > 0.0) {
          j["discrepancy"] = diff / est.std_error;
          j["discrepancy_units"] = "stderr";
        } else {
          j["discrepancy"] = diff;
          j["discrepancy_units"] = "absolute";
        }
      }
      emit(j.dump() + "\n", output, out);
      return kExitOk;
    }

    if (*check) {
      if (!is_known_suite(suite)) throw Error(ErrorCode::Usage, "unknown suite '" + suite + "'");
      const std::uint64_t seed = resolve_seed(seed_opt, err);
      const auto verdicts = run_suite(suite, n, trials, seed);
      bool all_ok = true;
      const bool color = use_color(err);
      for (const auto &v : verdicts) {
        out << io::verdict_to_json_line(v) << "\n";
        all_ok = all_ok && v.ok();
        const char *tag = v.ok() ? "ok  " : "FAIL";
        if (color) err << (v.ok() ? "\033[32m" : "\033[31m") << tag << "\033[0m";
        else err << tag;
        err << " " << v.property << (v.expect_failure ? " (negative control)" : "") << "\n";
      }
      return all_ok ? kExitOk : kExitPropertyFailure;
    }

    if (*surf) {
      const auto q = io::parse_surface_quantity(quantity);
      emit(io::surface_to_csv(io::surface(q, resolution)), output, out);
      return kExitOk;
    }
  } catch (const Error &e) {
    err << "error: " << e.what() << "\n";
    return exit_code_for(e.code());
  }
  return kExitUsage;
}

} // namespace qent
