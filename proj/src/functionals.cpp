#include "halfwave/functionals.hpp"

#include <cmath>

#include "halfwave/errors.hpp"

namespace halfwave {

IntegralNorms integral_norms(const Field& f, const Spectrum& spec) {
  const Grid& g = f.grid();
  IntegralNorms out;
  double m = 0.0, l5 = 0.0;
  for (const auto& z : f.values()) {
    const double a2 = std::norm(z);
    m += a2;
    l5 += a2 * a2 * std::sqrt(a2);
  }
  out.mass = m * g.dx();
  out.l5_fifth = l5 * g.dx();
  double h = 0.0, p = 0.0;
  for (std::size_t s = 0; s < g.n(); ++s) {
    const double w = std::norm(spec[s]);
    h += std::abs(g.xi(s)) * w;
    p -= g.xi_odd(s) * w;
  }
  out.h_half = h / g.length();
  out.momentum_term = p / g.length();
  return out;
}

IntegralNorms integral_norms(const Field& f) { return integral_norms(f, to_spectrum(f)); }

double hw_energy(const Field& f) {
  const auto n = integral_norms(f);
  return 0.5 * n.h_half - 0.2 * n.l5_fifth;
}

double boosted_form(const Field& f, double v) {
  const auto n = integral_norms(f);
  return n.h_half + v * n.momentum_term;
}

double boosted_energy(const Field& f, double v, double mu) {
  const auto n = integral_norms(f);
  return 0.5 * n.h_half - 0.2 * n.l5_fifth + 0.5 * mu * n.mass + 0.5 * v * n.momentum_term;
}

double weinstein(const Field& f, double v) {
  const auto n = integral_norms(f);
  if (n.mass == 0.0) throw InvalidArgument("Weinstein functional of the zero field");
  const double b = n.h_half + v * n.momentum_term;
  if (!(b > 0.0)) throw InvalidArgument("boosted quadratic form is not positive");
  return n.l5_fifth / (std::pow(b, 1.5) * n.mass);
}

FunctionalReport functional_report(const Field& f, double v, double mu) {
  const auto n = integral_norms(f);
  FunctionalReport r;
  r.mass = n.mass;
  r.l5_fifth = n.l5_fifth;
  r.h_half = n.h_half;
  r.momentum_term = n.momentum_term;
  r.boosted = n.h_half + v * n.momentum_term;
  r.hw_energy = 0.5 * n.h_half - 0.2 * n.l5_fifth;
  r.boosted_energy = r.hw_energy + 0.5 * mu * n.mass + 0.5 * v * n.momentum_term;
  if (n.mass > 0.0 && r.boosted > 0.0) r.weinstein = n.l5_fifth / (std::pow(r.boosted, 1.5) * n.mass);
  return r;
}

double h1_seminorm_sq(const Field& f) {
  const Spectrum sp = to_spectrum(f);
  const Grid& g = f.grid();
  double acc = 0.0;
  for (std::size_t s = 0; s < g.n(); ++s) acc += g.xi(s) * g.xi(s) * std::norm(sp[s]);
  return acc / g.length();
}

namespace {

Field keep_modes(const Field& f, bool positive) {
  const Spectrum sp = to_spectrum(f);
  const Grid& g = f.grid();
  std::vector<cplx> c(sp.coeffs().begin(), sp.coeffs().end());
  for (std::size_t s = 0; s < g.n(); ++s) {
    const long k = g.k(s);
    if (positive ? k <= 0 : k >= 0) c[s] = 0.0;
  }
  return to_field(Spectrum(g, std::move(c)));
}

}  // namespace

Field positive_frequency_part(const Field& f) { return keep_modes(f, true); }
Field negative_frequency_part(const Field& f) { return keep_modes(f, false); }

}  // namespace halfwave
