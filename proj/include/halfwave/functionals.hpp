#pragma once

// Conserved quantities and variational functionals, evaluated by Riemann sums
// (physical space) and Plancherel sums (frequency space).

#include "halfwave/spectral.hpp"

namespace halfwave {

struct IntegralNorms {
  double mass = 0.0;           ///< ||u||_2^2
  double l5_fifth = 0.0;       ///< ||u||_5^5
  double h_half = 0.0;         ///< ||u||^2 in homogeneous H^{1/2}
  double momentum_term = 0.0;  ///< i int conj(u) u_x dx, real by construction
};

IntegralNorms integral_norms(const Field& f);
IntegralNorms integral_norms(const Field& f, const Spectrum& spec);

/// (1/2) h_half - (1/5) l5_fifth.
double hw_energy(const Field& f);
/// B_v(u) = h_half + v * momentum_term.
double boosted_form(const Field& f, double v);
/// hw_energy + (mu/2) mass + (v/2) momentum_term.
double boosted_energy(const Field& f, double v, double mu);
/// l5_fifth / (B_v^{3/2} mass); throws on the zero field.
double weinstein(const Field& f, double v);

struct FunctionalReport {
  double mass = 0.0;
  double l5_fifth = 0.0;
  double h_half = 0.0;
  double momentum_term = 0.0;
  double boosted = 0.0;
  double hw_energy = 0.0;
  double boosted_energy = 0.0;
  double weinstein = 0.0;  ///< zero for the zero field
};

FunctionalReport functional_report(const Field& f, double v, double mu);

/// ||u'||_2^2, the homogeneous H^1 seminorm squared.
double h1_seminorm_sq(const Field& f);

/// Projections onto k > 0 and k < 0.  The zero mode belongs to neither; the
/// Nyquist slot (k = -n/2) goes with the negative part.
Field positive_frequency_part(const Field& f);
Field negative_frequency_part(const Field& f);

}  // namespace halfwave
