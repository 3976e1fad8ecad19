#pragma once

// Strang splitting for i u_t = |D| u - |u|^3 u with both sub-flows solved
// exactly: the linear part as the multiplier exp(-i|xi|t), the nonlinear part
// as the pointwise phase rotation u exp(i|u|^3 t).

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <vector>

#include "halfwave/solver.hpp"
#include "halfwave/spectral.hpp"

namespace halfwave {

Field linear_flow(const Field& f, double t);
Field nonlinear_flow(const Field& f, double t);

/// Half nonlinear, full linear, half nonlinear.  strang_step(., -dt) inverts
/// strang_step(., dt) up to rounding.
Field strang_step(const Field& f, double dt);

struct EvolutionTrace {
  std::vector<double> times;
  std::vector<double> mass_drift;    ///< |M(t) - M(0)| / M(0)
  std::vector<double> energy_drift;  ///< |E(t) - E(0)| / |E(0)|
  std::optional<std::vector<double>> shape_error;
};

struct EvolveOptions {
  std::size_t stride = 1;           ///< sample the trace every `stride` steps
  double mass_drift_abort = 1e-6;   ///< throw EvolutionUnstable beyond this
};

struct EvolutionResult {
  Field final_state;
  EvolutionTrace trace;
};

/// Integrates to time T with round(T/dt) steps.  When `reference` is given the
/// trace carries ||u(t) - e^{i mu t} Q(x - v t)|| / ||Q||.
EvolutionResult evolve(const Field& u0, double T, double dt, const WaveProfile* reference = nullptr,
                       const EvolveOptions& opts = {});

/// The exact traveling wave e^{i mu t} Q(x - v t) built by Fourier translation.
Field traveling_reference(const WaveProfile& p, double t);

/// Columns t, mass_rel_drift, energy_rel_drift, shape_error.
void write_trace_csv(std::ostream& os, const EvolutionTrace& trace);

}  // namespace halfwave
