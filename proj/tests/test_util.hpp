#pragma once

#include <deque>
#include <random>

#include "halfwave/solver.hpp"
#include "halfwave/spectral.hpp"

namespace testutil {

using halfwave::cplx;

inline halfwave::Field random_field(const halfwave::Grid& g, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  std::vector<cplx> v(g.n());
  for (auto& z : v) z = {normal(rng), normal(rng)};
  return halfwave::Field(g, std::move(v));
}

inline halfwave::Field gaussian(const halfwave::Grid& g, double width, double carrier = 0.0, double centre = 0.0) {
  return halfwave::Field::from_function(g, [=](double x) {
    const double d = x - centre;
    return std::exp(cplx(-d * d / (width * width), carrier * x));
  });
}

inline const halfwave::Grid& pinned_grid() {
  static const halfwave::Grid g(4096, 200.0);
  return g;
}

/// Converged profile on n=4096, L=200, solved once per process.
inline const halfwave::WaveProfile& profile(double v) {
  static std::deque<halfwave::WaveProfile> cache;
  for (const auto& p : cache)
    if (p.v == v) return p;
  cache.push_back(halfwave::solve_profile(v, pinned_grid(), halfwave::SolveConfig{}));
  return cache.back();
}

}  // namespace testutil
