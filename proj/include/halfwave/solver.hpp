#pragma once

// Traveling-wave profiles Q_v of
//     |D| Q + i v Q' + (1 - v) Q - |Q|^3 Q = 0
// computed by a stabilized (Petviashvili) fixed-point iteration on the
// resolvent A_v, with phase/translation gauge fixing and continuation in v.

#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "halfwave/functionals.hpp"
#include "halfwave/spectral.hpp"

namespace halfwave {

struct GaussianPacket {
  double width = 2.0;
  /// Carrier wavenumber; defaults to default_carrier(v) when empty.
  std::optional<double> carrier;
};

struct FromProfile {
  Field field;
};

using InitialGuess = std::variant<GaussianPacket, FromProfile>;

enum class Gauge { PhasePeakReal, None };

struct SolveConfig {
  double gamma = 4.0 / 3.0;
  double tol_residual = 1e-10;
  double tol_increment = 1e-12;
  int max_iter = 2000;
  InitialGuess guess = GaussianPacket{};
  Gauge gauge = Gauge::PhasePeakReal;

  /// Throws InvalidArgument unless 1 < gamma < 2, tolerances > 0, max_iter > 0.
  void validate() const;
};

struct WaveProfile {
  double v;
  double mu;
  Field field;
  double residual_l2;
  int iterations;
  bool converged;
  FunctionalReport report;
};

/// Thrown by solve_profile when neither stopping test passes with the
/// residual below tolerance.  Carries the best iterate found.
class NonConvergenceError : public std::runtime_error {
 public:
  NonConvergenceError(const std::string& what, WaveProfile best)
      : std::runtime_error(what), best_(std::move(best)) {}
  const WaveProfile& best() const noexcept { return best_; }

 private:
  WaveProfile best_;
};

/// Carrier of the default packet: zero up to v = 1/2, then 2 (v - 1/2).
double default_carrier(double v);

Field initial_guess(const Grid& grid, double v, const SolveConfig& cfg);

struct StepResult {
  Field next;
  double stabilizer;
};

/// One stabilized step w -> S^gamma A_v(|w|^3 w) with
/// S = <L w, w> / Re<|w|^3 w, w>.  Throws DegenerateIterate when the
/// denominator is not positive.
StepResult petviashvili_step(const Field& w, double v, double mu, const SolveConfig& cfg);

/// ||L Q - |Q|^3 Q||_2 recomputed from scratch.
double profile_residual(const Field& q, double v, double mu);

/// Location of the maximum of |w| refined off-grid by Newton's method on the
/// trigonometric interpolant.
double peak_position(const Field& w);

/// Translate the modulus peak to x = 0 and rotate so w(0) is real positive.
Field gauge_fix(const Field& w);

WaveProfile make_profile(double v, Field field, int iterations, bool converged);

WaveProfile solve_profile(double v, const Grid& grid, const SolveConfig& cfg);

struct SweepEntry {
  double v;
  std::optional<WaveProfile> profile;  ///< present unless the solve threw early
  std::string error;                   ///< empty when converged
  bool converged() const { return profile && profile->converged && error.empty(); }
};

struct SweepOptions {
  /// Warm start each speed from the previous converged profile.
  bool continuation = true;
  /// Worker threads; only honoured when continuation is off.
  unsigned threads = 1;
};

std::vector<SweepEntry> sweep(std::span<const double> v_values, const Grid& grid, const SolveConfig& cfg,
                              const SweepOptions& opts = {});

}  // namespace halfwave
