// halfwave command-line front end.
//
// Precedence for every setting: command-line flag, then the --config JSON
// file, then built-in defaults.  The output directory falls back to
// $HALFWAVE_OUT when neither a flag nor the config file names one.
//
// Exit codes: 0 success, 1 failed assertion or numerical failure, 2 usage,
// 3 input/output.  Failures also print one JSON object on stderr.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "commands.hpp"
#include "halfwave/errors.hpp"
#include "halfwave/solver.hpp"
#include "json.hpp"

namespace {

using namespace halfwave;
namespace fs = std::filesystem;

constexpr int kExitAssert = 1;
constexpr int kExitUsage = 2;
constexpr int kExitIo = 3;

int report_error(const std::string& kind, const std::string& message, int code) {
  nlohmann::json j{{"error", {{"kind", kind}, {"message", message}}}, {"exit_code", code}};
  std::cerr << j.dump() << '\n';
  return code;
}

struct Flags {
  std::string config;
  std::string out;
  std::optional<long> n;
  std::optional<double> length;
  std::optional<std::uint64_t> seed;
  std::string speeds;
  std::optional<double> tol;
  std::optional<int> max_iter;
  std::optional<double> gamma;
  bool no_continuation = false;
  std::optional<unsigned> threads;
  std::optional<double> T;
  std::optional<double> dt;
  std::optional<std::size_t> stride;
};

// Loads the config file (if any) and applies flags on top.
cli::Context make_context(const Flags& fl, bool& explicit_out_in_file) {
  RunConfig cfg;
  explicit_out_in_file = false;
  if (!fl.config.empty()) {
    std::ifstream in(fl.config);
    if (!in) throw IoError("cannot open config " + fl.config);
    nlohmann::json j;
    try {
      in >> j;
    } catch (const nlohmann::json::exception& e) {
      throw InvalidArgument("config " + fl.config + " is not valid JSON: " + e.what());
    }
    cfg = run_config_from_json(j);
    explicit_out_in_file = j.contains("output_dir");
  }
  if (fl.n) cfg.grid.n = *fl.n;
  if (fl.length) cfg.grid.length = *fl.length;
  if (fl.seed) cfg.seed = *fl.seed;
  if (!fl.speeds.empty()) cfg.speeds = parse_value_list(fl.speeds);
  if (fl.tol) cfg.solver.tol_residual = *fl.tol;
  if (fl.max_iter) cfg.solver.max_iter = *fl.max_iter;
  if (fl.gamma) cfg.solver.gamma = *fl.gamma;
  if (fl.no_continuation) cfg.solver.continuation = false;
  if (fl.threads) cfg.solver.threads = *fl.threads;
  if (fl.T) cfg.evolution.T = *fl.T;
  if (fl.dt) cfg.evolution.dt = *fl.dt;
  if (fl.stride) cfg.evolution.stride = *fl.stride;

  if (!fl.out.empty()) {
    cfg.output_dir = fl.out;
  } else if (!explicit_out_in_file) {
    const char* env = std::getenv("HALFWAVE_OUT");
    if (env && *env) cfg.output_dir = env;
  }
  return cli::Context{cfg, fs::path(cfg.output_dir), std::cout, fl.n.has_value() || fl.length.has_value()};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Traveling waves of the quartic focusing half-wave equation i u_t = |D| u - |u|^3 u."};
  app.require_subcommand(1);
  app.fallthrough();

  Flags fl;
  app.add_option("--config", fl.config, "JSON run configuration");
  app.add_option("--out", fl.out, "output directory (default: config, then $HALFWAVE_OUT, then .)");
  app.add_option("--n", fl.n, "grid points (even, >= 16)");
  app.add_option("--L", fl.length, "periodic box length");
  app.add_option("--seed", fl.seed, "seed for randomized test fields");

  auto* solve = app.add_subcommand("solve", "compute one traveling-wave profile");
  cli::SolveArgs solve_args;
  std::string from;
  solve->add_option("--v", fl.speeds, "speed in (0,1)")->required();
  solve->add_option("--from", from, "warm start from a saved profile (its grid is used)");
  solve->add_option("--tol", fl.tol, "residual tolerance");
  solve->add_option("--max-iter", fl.max_iter, "iteration cap");
  solve->add_option("--gamma", fl.gamma, "stabilizer exponent in (1,2)");

  auto* sweep = app.add_subcommand("sweep", "profiles over an ascending list of speeds");
  sweep->add_option("--v", fl.speeds, "speeds: a:b:step or a,b,c")->required();
  sweep->add_option("--tol", fl.tol, "residual tolerance");
  sweep->add_option("--max-iter", fl.max_iter, "iteration cap");
  sweep->add_flag("--no-continuation", fl.no_continuation, "cold-start every speed");
  sweep->add_option("--threads", fl.threads, "worker threads (only without continuation)");

  auto* evolve = app.add_subcommand("evolve", "propagate a saved profile and trace conservation");
  cli::EvolveArgs evolve_args;
  std::string profile;
  evolve->add_option("--profile", profile, "profile CSV")->required();
  evolve->add_option("--T", fl.T, "final time");
  evolve->add_option("--dt", fl.dt, "time step");
  evolve->add_option("--stride", fl.stride, "trace sampling stride in steps");

  auto* green = app.add_subcommand("green", "evaluate the half-plane Green's function three ways");
  std::string xs = "0", ys = "1";
  green->add_option("--x", xs, "x values: a:b:step or a,b,c");
  green->add_option("--y", ys, "y values (> 0): a:b:step or a,b,c");

  auto* check = app.add_subcommand("check", "run the acceptance suite");
  cli::CheckArgs check_args;
  check->add_option("--suite", check_args.suite, "'all' or a comma list of criterion numbers");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    return report_error("usage", e.what(), kExitUsage);
  }

  try {
    bool out_in_file = false;
    const cli::Context ctx = make_context(fl, out_in_file);
    // A failed assertion still writes its outputs; stderr gets the error record.
    auto finish = [](int code, const std::string& what) {
      return code == 0 ? 0 : report_error("check_failed", what, kExitAssert);
    };
    if (*solve) {
      if (!from.empty()) solve_args.from = from;
      return cli::cmd_solve(ctx, solve_args);
    }
    if (*sweep) return finish(cli::cmd_sweep(ctx), "sweep: some speeds failed or a scaling fit missed its target");
    if (*evolve) {
      evolve_args.profile = profile;
      return cli::cmd_evolve(ctx, evolve_args);
    }
    if (*green) {
      return finish(cli::cmd_green(ctx, cli::GreenArgs{parse_value_list(xs), parse_value_list(ys)}),
                    "green: methods disagree beyond 1e-6");
    }
    if (*check) return finish(cli::cmd_check(ctx, check_args), "check: some acceptance criteria failed");
  } catch (const InvalidArgument& e) {
    return report_error("usage", e.what(), kExitUsage);
  } catch (const IoError& e) {
    return report_error("io", e.what(), kExitIo);
  } catch (const NonConvergenceError& e) {
    return report_error("nonconvergence", e.what(), kExitAssert);
  } catch (const QuadratureError& e) {
    return report_error("quadrature", e.what(), kExitAssert);
  } catch (const std::exception& e) {
    return report_error("failure", e.what(), kExitAssert);
  }
  return kExitUsage;
}
