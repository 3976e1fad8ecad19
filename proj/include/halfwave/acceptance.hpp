#pragma once

// The acceptance suite: ten numbered criteria, each a DiagnosticsReport.
// Profiles shared between criteria are computed once per run.

#include <cstdint>
#include <iosfwd>
#include <set>
#include <string>
#include <vector>

#include "halfwave/diagnostics.hpp"
#include "json.hpp"

namespace halfwave {

struct CriterionResult {
  int id;
  std::string title;
  DiagnosticsReport report;
  double seconds = 0.0;
  std::string error;  ///< set when the criterion threw before finishing
  bool pass() const { return error.empty() && report.all_pass(); }
};

struct AcceptanceOptions {
  std::set<int> criteria;        ///< empty means all
  std::uint64_t seed = 12345;
  std::ostream* log = nullptr;   ///< progress lines, one per criterion
};

constexpr int kCriterionCount = 10;

/// "all" or a comma list of criterion numbers.
std::set<int> parse_suite(const std::string& text);

std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& opts = {});

nlohmann::json acceptance_to_json(const std::vector<CriterionResult>& results);

/// "PASS  3  title" or "FAIL  3  title", followed by the failing entries.
void print_summary_line(std::ostream& os, const CriterionResult& r, bool details = true);

}  // namespace halfwave
