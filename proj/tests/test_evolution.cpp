#include <algorithm>
#include <cmath>
#include <sstream>

#include "doctest.h"
#include "halfwave/errors.hpp"
#include "halfwave/evolution.hpp"
#include "halfwave/functionals.hpp"
#include "test_util.hpp"

using namespace halfwave;

namespace {

double max_abs_diff(const Field& a, const Field& b) {
  double m = 0.0;
  for (std::size_t j = 0; j < a.size(); ++j) m = std::max(m, std::abs(a[j] - b[j]));
  return m;
}

double max_of(const std::vector<double>& v) { return *std::max_element(v.begin(), v.end()); }

}  // namespace

TEST_SUITE("evolution") {
  TEST_CASE("linear flow") {
    const Grid g(256, 20.0);
    const Field f = testutil::random_field(g, 8);
    CHECK(max_abs_diff(linear_flow(f, 0.0), f) < 1e-13);
    const double xi = 2.0 * std::numbers::pi * 3.0 / 20.0;
    const Field e = Field::from_function(g, [xi](double x) { return std::exp(cplx(0.0, xi * x)); });
    CHECK(max_abs_diff(linear_flow(e, 1.7), std::exp(cplx(0.0, -xi * 1.7)) * e) < 1e-13);
    const double m = integral_norms(f).mass;
    CHECK(std::abs(integral_norms(linear_flow(f, 12.3)).mass - m) / m < 1e-14);
  }

  TEST_CASE("nonlinear flow") {
    const Grid g(64, 5.0);
    const Field f = testutil::random_field(g, 9);
    CHECK(max_abs_diff(nonlinear_flow(f, 0.0), f) == 0.0);
    const Field u = nonlinear_flow(f, 0.9);
    for (std::size_t j = 0; j < f.size(); ++j) CHECK(std::abs(std::abs(u[j]) - std::abs(f[j])) < 1e-15 * (1.0 + std::abs(f[j])));
    const cplx c(0.6, -0.3);
    const Field k = Field::from_function(g, [c](double) { return c; });
    const double a3 = std::pow(std::abs(c), 3);
    CHECK(max_abs_diff(nonlinear_flow(k, 2.0), c * std::exp(cplx(0.0, a3 * 2.0)) * Field::from_function(g, [](double) { return cplx(1.0); })) < 1e-15);
  }

  TEST_CASE("zero data and preconditions") {
    const Grid g(128, 10.0);
    const auto r = evolve(Field::zeros(g), 1.0, 0.1);
    CHECK(l2_norm(r.final_state) == 0.0);
    CHECK(r.trace.times.size() == 11);
    CHECK(max_of(r.trace.mass_drift) == 0.0);
    CHECK_THROWS_AS(evolve(Field::zeros(g), 1.0, 0.0), InvalidArgument);
    CHECK_THROWS_AS(evolve(Field::zeros(g), 0.01, 0.1), InvalidArgument);
    EvolveOptions bad;
    bad.stride = 0;
    CHECK_THROWS_AS(evolve(Field::zeros(g), 1.0, 0.1, nullptr, bad), InvalidArgument);
  }

  TEST_CASE("Strang step is time-reversible") {
    const Grid g(512, 40.0);
    const Field u0 = cplx(0.5) * testutil::gaussian(g, 2.0, 0.5);
    Field u = u0;
    for (int i = 0; i < 200; ++i) u = strang_step(u, 0.01);
    CHECK(l2_norm(u - u0) > 1e-2);
    for (int i = 0; i < 200; ++i) u = strang_step(u, -0.01);
    CHECK(l2_norm(u - u0) / l2_norm(u0) < 1e-12);
  }

  TEST_CASE("mass is conserved to rounding on rough data") {
    const Grid g(256, 20.0);
    const Field u0 = cplx(0.3) * testutil::random_field(g, 10);
    const auto r = evolve(u0, 1.0, 1e-2);
    CHECK(max_of(r.trace.mass_drift) < 1e-12);
    CHECK(r.trace.times.front() == 0.0);
    CHECK(r.trace.mass_drift.front() == 0.0);
    CHECK(r.trace.energy_drift.front() == 0.0);
  }

  TEST_CASE("instability guard") {
    const Grid g(64, 5.0);
    EvolveOptions strict;
    strict.mass_drift_abort = -1.0;
    CHECK_THROWS_AS(evolve(testutil::random_field(g, 1), 0.1, 0.1, nullptr, strict), EvolutionUnstable);
  }

  TEST_CASE("traveling wave is transported") {
    const WaveProfile& p = testutil::profile(0.5);
    EvolveOptions opts;
    opts.stride = 250;
    const auto fine = evolve(p.field, 2.0, 1e-3, &p, opts);
    const auto coarse = evolve(p.field, 2.0, 2e-3, &p, opts);
    REQUIRE(fine.trace.shape_error);
    CHECK(fine.trace.times.size() == 9);
    CHECK(fine.trace.times.back() == doctest::Approx(2.0));
    CHECK(max_of(fine.trace.mass_drift) < 1e-10);
    CHECK(max_of(*fine.trace.shape_error) < 1e-3);
    // On the traveling wave the dt^2 energy error nearly cancels (about 14x per halving).
    CHECK(max_of(coarse.trace.energy_drift) / max_of(fine.trace.energy_drift) > 8.0);
    CHECK(l2_norm(traveling_reference(p, 0.0) - p.field) / l2_norm(p.field) < 1e-14);
  }

  TEST_CASE("energy drift is second order") {
    const Grid g(1024, 60.0);
    const Field u0 = cplx(0.5) * testutil::gaussian(g, 2.0, 0.5);
    EvolveOptions opts;
    opts.stride = 50;
    const double e1 = max_of(evolve(u0, 2.0, 2e-3, nullptr, opts).trace.energy_drift);
    const double e2 = max_of(evolve(u0, 2.0, 1e-3, nullptr, opts).trace.energy_drift);
    CHECK(e1 / e2 == doctest::Approx(4.0).epsilon(0.02));
  }

  TEST_CASE("shape error is second order above the profile floor") {
    // Below dt ~ 1e-3 the solver residual sets a dt-independent floor near
    // 3e-5, so the order is read off at coarse steps and long times.
    const WaveProfile& p = testutil::profile(0.5);
    EvolveOptions opts;
    opts.stride = 1000;
    const auto a = evolve(p.field, 10.0, 2e-3, &p, opts);
    const auto b = evolve(p.field, 10.0, 4e-3, &p, opts);
    CHECK(b.trace.shape_error->back() / a.trace.shape_error->back() == doctest::Approx(4.0).epsilon(0.1));
  }

  TEST_CASE("trace CSV") {
    const Grid g(64, 5.0);
    const auto r = evolve(cplx(0.1) * testutil::gaussian(g, 1.0), 0.2, 0.1);
    std::ostringstream os;
    write_trace_csv(os, r.trace);
    const std::string s = os.str();
    CHECK(s.rfind("# ", 0) == 0);
    CHECK(s.find("\nt,mass_rel_drift,energy_rel_drift,shape_error\n") != std::string::npos);
    CHECK(std::count(s.begin(), s.end(), '\n') == 2 + 3);
  }
}
