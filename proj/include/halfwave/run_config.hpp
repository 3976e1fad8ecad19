#pragma once

// Run configuration shared by the command-line tools.  Stored as one JSON
// document; every field is optional on input and defaults as below.

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "halfwave/solver.hpp"
#include "json.hpp"

namespace halfwave {

struct GridConfig {
  long n = 4096;
  double length = 200.0;
  bool operator==(const GridConfig&) const = default;
};

struct SolverConfig {
  double gamma = 4.0 / 3.0;
  double tol_residual = 1e-10;
  double tol_increment = 1e-12;
  int max_iter = 2000;
  double packet_width = 2.0;
  bool gauge = true;
  bool continuation = true;
  unsigned threads = 1;
  bool operator==(const SolverConfig&) const = default;
};

struct EvolutionConfig {
  double T = 10.0;
  double dt = 1e-3;
  std::size_t stride = 100;
  bool operator==(const EvolutionConfig&) const = default;
};

struct DiagnosticsToggles {
  bool pohozaev = true;
  bool virial = true;
  bool scaling = true;
  bool decay = false;
  bool operator==(const DiagnosticsToggles&) const = default;
};

struct RunConfig {
  GridConfig grid;
  SolverConfig solver;
  std::vector<double> speeds{0.5};
  EvolutionConfig evolution;
  DiagnosticsToggles diagnostics;
  std::string output_dir = ".";
  std::uint64_t seed = 12345;
  bool operator==(const RunConfig&) const = default;

  /// Throws InvalidArgument on any out-of-range field.
  void validate() const;
  SolveConfig solve_config() const;
  Grid make_grid() const;
};

nlohmann::json to_json(const RunConfig& c);
/// Unknown keys are rejected so typos do not silently fall back to defaults.
RunConfig run_config_from_json(const nlohmann::json& j);

RunConfig load_run_config(const std::filesystem::path& path);
void save_run_config(const RunConfig& c, const std::filesystem::path& path);

/// "a:b:step" (inclusive of b) or a comma list "a,b,c".  Used for speed and
/// coordinate lists.
std::vector<double> parse_value_list(const std::string& text);

}  // namespace halfwave
