#include <cmath>
#include <numbers>

#include "doctest.h"
#include "halfwave/errors.hpp"
#include "halfwave/functionals.hpp"
#include "test_util.hpp"

using namespace halfwave;
using std::numbers::pi;

namespace {

Field smooth_packet(const Grid& g, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  cplx c[3];
  double k[3];
  for (int i = 0; i < 3; ++i) {
    c[i] = {normal(rng), normal(rng)};
    k[i] = 2.0 * normal(rng);
  }
  return Field::from_function(g, [&](double x) {
    cplx s = 0.0;
    for (int i = 0; i < 3; ++i) s += c[i] * std::exp(cplx(-x * x / 8.0, k[i] * x));
    return s;
  });
}

}  // namespace

TEST_SUITE("functionals") {
  TEST_CASE("closed-form norms") {
    const Grid g(64, 16.0);
    const auto z = integral_norms(Field::zeros(g));
    CHECK(z.mass == 0.0);
    CHECK(z.l5_fifth == 0.0);
    CHECK(z.h_half == 0.0);
    CHECK(z.momentum_term == 0.0);
    CHECK(hw_energy(Field::zeros(g)) == 0.0);
    CHECK(boosted_energy(Field::zeros(g), 0.5, 0.5) == 0.0);

    const Field one = Field::from_function(g, [](double) { return cplx(1.0); });
    const auto n1 = integral_norms(one);
    CHECK(n1.mass == doctest::Approx(16.0).epsilon(1e-14));
    CHECK(n1.l5_fifth == doctest::Approx(16.0).epsilon(1e-14));
    CHECK(std::abs(n1.h_half) < 1e-12);
    CHECK(std::abs(n1.momentum_term) < 1e-12);
    CHECK(hw_energy(one) == doctest::Approx(-16.0 / 5.0).epsilon(1e-13));

    const long k = 5;
    const double xi = 2.0 * pi * k / 16.0;
    const Field e = Field::from_function(g, [xi](double x) { return std::exp(cplx(0.0, xi * x)); });
    const auto ne = integral_norms(e);
    CHECK(ne.h_half == doctest::Approx(16.0 * xi).epsilon(1e-13));
    CHECK(ne.momentum_term == doctest::Approx(-16.0 * xi).epsilon(1e-13));
    CHECK(h1_seminorm_sq(e) == doctest::Approx(16.0 * xi * xi).epsilon(1e-13));
  }

  TEST_CASE("real fields carry no momentum") {
    const Grid g(1024, 40.0);
    std::mt19937_64 rng(3);
    std::normal_distribution<double> normal;
    std::vector<cplx> v(g.n());
    for (auto& z : v) z = normal(rng);
    const Field f(g, v);
    const auto n = integral_norms(f);
    CHECK(std::abs(n.momentum_term) < 1e-10 * n.h_half);
    const double mu = 0.3;
    CHECK(boosted_energy(f, 0.7, mu) == doctest::Approx(hw_energy(f) + 0.5 * mu * n.mass).epsilon(1e-12));
  }

  TEST_CASE("frequency halves of the boosted form") {
    const Grid g(1024, 60.0);
    for (unsigned seed : {1u, 2u, 3u}) {
      const Field f = smooth_packet(g, seed);
      const Field fp = positive_frequency_part(f), fm = negative_frequency_part(f);
      for (double v : {0.2, 0.9}) {
        const double hp = integral_norms(fp).h_half, hm = integral_norms(fm).h_half;
        CHECK(boosted_form(fp, v) == doctest::Approx((1.0 - v) * hp).epsilon(1e-12));
        CHECK(boosted_form(fm, v) == doctest::Approx((1.0 + v) * hm).epsilon(1e-12));
        CHECK(boosted_form(f, v) == doctest::Approx(boosted_form(fp, v) + boosted_form(fm, v)).epsilon(1e-12));
        CHECK(boosted_form(f, v) > 0.0);
      }
    }
  }

  TEST_CASE("Weinstein functional") {
    const Grid g(1024, 60.0);
    const Field f = smooth_packet(g, 9);
    CHECK_THROWS_AS(weinstein(Field::zeros(g), 0.5), InvalidArgument);
    const double w = weinstein(f, 0.5);
    // a f(b x): same samples on a box shorter by b.
    for (double a : {0.5, 3.0})
      for (double b : {0.5, 2.0}) {
        std::vector<cplx> vals(f.values().begin(), f.values().end());
        for (auto& z : vals) z *= a;
        const Field scaled(Grid(1024, 60.0 / b), vals);
        CHECK(weinstein(scaled, 0.5) == doctest::Approx(w).epsilon(1e-8));
      }
    const Field fp = positive_frequency_part(f);
    const auto n = integral_norms(fp);
    CHECK(weinstein(fp, 0.5) ==
          doctest::Approx(n.l5_fifth / (std::pow(0.5 * n.h_half, 1.5) * n.mass)).epsilon(1e-12));
  }

  TEST_CASE("functional report is consistent") {
    const Grid g(512, 30.0);
    const Field f = smooth_packet(g, 4);
    const auto r = functional_report(f, 0.6, 0.4);
    const auto n = integral_norms(f);
    CHECK(r.mass == n.mass);
    CHECK(r.boosted == doctest::Approx(n.h_half + 0.6 * n.momentum_term).epsilon(1e-14));
    CHECK(r.hw_energy == doctest::Approx(0.5 * n.h_half - 0.2 * n.l5_fifth).epsilon(1e-14));
    CHECK(r.boosted_energy ==
          doctest::Approx(r.hw_energy + 0.2 * n.mass + 0.3 * n.momentum_term).epsilon(1e-14));
    CHECK(r.weinstein == doctest::Approx(weinstein(f, 0.6)).epsilon(1e-14));
  }

  TEST_CASE("profiles are critical points of the boosted energy") {
    const WaveProfile& q = testutil::profile(0.5);
    const Field h = smooth_packet(q.field.grid(), 21);
    const double hn = l2_norm(h);
    auto central = [&](const Field& at, double eps) {
      return (boosted_energy(at + cplx(eps) * h, q.v, q.mu) - boosted_energy(at - cplx(eps) * h, q.v, q.mu)) /
             (2.0 * eps);
    };
    // Richardson removes the eps^2 term of the central difference.
    for (double eps : {2e-3, 1e-3}) {
      const double d = (4.0 * central(q.field, 0.5 * eps) - central(q.field, eps)) / 3.0;
      CHECK(std::abs(d) / hn < 1e-6);
    }
    // Off the profile the same derivative is order one.
    const Field off = cplx(1.1) * q.field;
    const double d = central(off, 1e-3);
    CHECK(std::abs(d) / hn > 1e-3);
  }
}
