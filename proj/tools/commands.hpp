#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "halfwave/run_config.hpp"

namespace halfwave::cli {

struct Context {
  RunConfig config;
  std::filesystem::path out_dir;
  std::ostream& out;
  bool grid_from_flags = false;  ///< --n or --L given explicitly
};

struct SolveArgs {
  std::optional<std::filesystem::path> from;
};

struct EvolveArgs {
  std::filesystem::path profile;
};

struct GreenArgs {
  std::vector<double> xs{0.0};
  std::vector<double> ys{1.0};
};

struct CheckArgs {
  std::string suite = "all";
};

// Each returns 0 on success and 1 when an asserted result fails; argument
// problems throw InvalidArgument, file problems IoError.
int cmd_solve(const Context& ctx, const SolveArgs& args);
int cmd_sweep(const Context& ctx);
int cmd_evolve(const Context& ctx, const EvolveArgs& args);
int cmd_green(const Context& ctx, const GreenArgs& args);
int cmd_check(const Context& ctx, const CheckArgs& args);

/// Creates the directory and verifies a file can be written in it.
void ensure_writable_dir(const std::filesystem::path& dir);

}  // namespace halfwave::cli
