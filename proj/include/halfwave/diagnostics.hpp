#pragma once

// Checks of the identities, bounds and asymptotics satisfied by traveling
// waves, evaluated on computed profiles and fields.

#include <iosfwd>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "halfwave/solver.hpp"
#include "halfwave/spectral.hpp"
#include "json.hpp"

namespace halfwave {

/// One named check: `value` against the interval [lo, hi] widened by
/// `tolerance`.  A point target has lo == hi.
struct ReportEntry {
  std::string name;
  double value = 0.0;
  double lo = -std::numeric_limits<double>::infinity();
  double hi = std::numeric_limits<double>::infinity();
  double tolerance = 0.0;
  bool pass = false;
  std::string note;

  bool evaluate() const { return value >= lo - tolerance && value <= hi + tolerance; }
};

class DiagnosticsReport {
 public:
  ReportEntry& add_near(std::string name, double value, double target, double tolerance, std::string note = {});
  ReportEntry& add_interval(std::string name, double value, double lo, double hi, std::string note = {});
  ReportEntry& add_at_most(std::string name, double value, double bound, std::string note = {});
  ReportEntry& add_at_least(std::string name, double value, double bound, std::string note = {});
  /// Recorded, not asserted: always passes when finite.
  ReportEntry& add_record(std::string name, double value, std::string note = {});

  void append(const DiagnosticsReport& other, const std::string& prefix = {});

  bool all_pass() const;
  const std::vector<ReportEntry>& entries() const noexcept { return entries_; }
  const ReportEntry* find(const std::string& name) const;

  nlohmann::json to_json() const;
  static DiagnosticsReport from_json(const nlohmann::json& j);
  /// Columns name,value,lo,hi,tolerance,pass,note.
  void write_csv(std::ostream& os) const;

 private:
  ReportEntry& push(ReportEntry e);
  std::vector<ReportEntry> entries_;
};

struct PohozaevResiduals {
  double boosted;   ///< |B_v - (3/2) mu M| / ((3/2) mu M)
  double l5_fifth;  ///< |L5 - (5/2) mu M| / ((5/2) mu M)
};

/// Throws InvalidArgument for non-converged profiles.
PohozaevResiduals pohozaev_check(const WaveProfile& p);

struct PowerLawFit {
  double exponent;
  double prefactor;
  double max_rel_residual;
};

/// Least squares of log y against log x.  Needs >= 3 points, all positive.
PowerLawFit power_law_fit(std::span<const double> xs, std::span<const double> ys);

/// Exponent fits of ||Q||_2, ||Q||_{H^1/2}, ||Q||_{H^1} and ||Q||_5^5 against
/// 1 - v.  Needs >= 4 converged profiles with v >= 0.9.
DiagnosticsReport scaling_suite(std::span<const WaveProfile> profiles);

/// Power-law fit of |f(x)| over grid points with x in [x_lo, x_hi] (both of
/// one sign).  The window must clear the core (|peak| + 3 rms widths) and stay
/// 5% of L inside the box edge.
PowerLawFit decay_fit(const Field& f, double x_lo, double x_hi);
PowerLawFit decay_fit(const WaveProfile& p, double x_lo, double x_hi);

struct FrequencySplit {
  double positive;  ///< share of (1/L) sum |u_hat|^2 on k > 0
  double negative;  ///< k < 0, Nyquist included
  double zero;      ///< k = 0
};

FrequencySplit frequency_mass_split(const Field& f);

/// (1/L) sum sign(xi_k) |u_hat_k|^2, the rate d/dt int x|u|^2 of the linear
/// flow.  Bounded in modulus by the mass.
double virial_rate(const Field& f);

struct SpeedOfLightResidual {
  double ode_residual;  ///< ||-2 f' + i mu f - i |f|^3 f|| / ||f|| on k <= 0
  double flatness;      ///< ||(|f|^2)'|| L / ||f||^2 on k <= 0
};

SpeedOfLightResidual speed_of_light_residual(const Field& f, double mu);

/// <f, Translate(shift) g> = dx sum conj(f(x)) g(x - shift).
cplx overlap(const Field& f, const Field& g, double shift);

struct ContinuityResult {
  double ratio;  ///< ||Q1 - Q2|| / ((v2 - v1) (1 - v1)^{1/3})
  bool asymptotic_regime;
};

ContinuityResult profile_continuity(const WaveProfile& p1, const WaveProfile& p2);

/// q_lambda(x) = lambda^{1/3} q(lambda x), realised exactly on the grid with
/// length L / lambda.
Field rescale_standing_wave(const Field& q, double lambda);

struct EnergyComparison {
  double wave_energy;
  double ground_state_energy;  ///< at the wave's mass
  double lambda;               ///< rescaling that matched the masses
  double wave_mass;
  double ground_state_mass;    ///< after rescaling
};

/// `gs` is a small-v profile used as the standing wave; its rescaling to the
/// mass of `p` is evaluated on the rescaled grid.
EnergyComparison ground_state_energy_compare(const WaveProfile& p, const WaveProfile& gs);

/// ||x |D| f - |D|(x f) + H f / pi|| / ||f|| with centred x.  Requires
/// boundary tails (outer 5% of the box) at most 1e-12 of the peak.
double commutator_residual(const Field& f);

}  // namespace halfwave
