#include <cmath>

#include "doctest.h"
#include "halfwave/diagnostics.hpp"
#include "halfwave/errors.hpp"
#include "halfwave/solver.hpp"
#include "test_util.hpp"

using namespace halfwave;

TEST_SUITE("solver") {
  TEST_CASE("config validation") {
    SolveConfig c;
    CHECK_NOTHROW(c.validate());
    c.gamma = 2.0;
    CHECK_THROWS_AS(c.validate(), InvalidArgument);
    c = SolveConfig{};
    c.tol_residual = 0.0;
    CHECK_THROWS_AS(c.validate(), InvalidArgument);
    c = SolveConfig{};
    c.max_iter = 0;
    CHECK_THROWS_AS(c.validate(), InvalidArgument);
  }

  TEST_CASE("initial guess") {
    const Grid& g = testutil::pinned_grid();
    const Field a = initial_guess(g, 0.1, SolveConfig{});
    const std::size_t o = g.origin_index();
    CHECK(a[o] == cplx(1.0, 0.0));
    double im = 0.0;
    for (std::size_t j = 0; j < a.size(); ++j) im = std::max(im, std::abs(a[j].imag()));
    CHECK(im == 0.0);
    CHECK(default_carrier(0.1) == 0.0);
    CHECK(default_carrier(0.9) > 0.0);
    const Field b = initial_guess(g, 0.9, SolveConfig{});
    const double x1 = g.x(o + 1);
    CHECK(std::arg(b[o + 1]) == doctest::Approx(default_carrier(0.9) * x1).epsilon(1e-12));
    // exp(-x^2 / width^2) envelope.
    CHECK(std::abs(b[o + 1]) == doctest::Approx(std::exp(-x1 * x1 / 4.0)).epsilon(1e-14));

    SolveConfig warm;
    warm.guess = FromProfile{testutil::profile(0.9).field};
    const Field c = initial_guess(g, 0.91, warm);
    CHECK(std::equal(c.values().begin(), c.values().end(), testutil::profile(0.9).field.values().begin()));
    CHECK_THROWS_AS(initial_guess(Grid(1024, 200.0), 0.91, warm), InvalidArgument);
  }

  TEST_CASE("converged profile at v=0.5") {
    const WaveProfile& p = testutil::profile(0.5);
    CHECK(p.converged);
    CHECK(p.residual_l2 <= 1e-10);
    CHECK(p.mu == 0.5);
    CHECK(p.report.momentum_term < 0.0);
    CHECK(p.report.boosted > 0.0);
    // Independent numpy Petviashvili solve on the same grid gives 1.3336755699693656.
    CHECK(p.report.mass == doctest::Approx(1.3336755699693656).epsilon(1e-8));
    // Pohozaev forces E = h/2 - mu M / 2 > mu M / 4 > 0.
    CHECK(p.report.hw_energy == doctest::Approx(0.4664713691648205).epsilon(1e-8));
    CHECK(std::abs(profile_residual(p.field, p.v, p.mu) - p.residual_l2) <= 1e-13);
  }

  TEST_CASE("fixed point of the stabilized step") {
    const WaveProfile& p = testutil::profile(0.5);
    const auto step = petviashvili_step(p.field, p.v, p.mu, SolveConfig{});
    CHECK(step.stabilizer == doctest::Approx(1.0).epsilon(1e-8));
    CHECK(l2_norm(step.next - p.field) / l2_norm(p.field) < 1e-8);

    // Doubling: <L w,w> picks up 4, <|w|^3 w,w> picks up 32.
    const auto twice = petviashvili_step(cplx(2.0) * p.field, p.v, p.mu, SolveConfig{});
    CHECK(twice.stabilizer == doctest::Approx(step.stabilizer / 8.0).epsilon(1e-12));
    CHECK(l2_norm(twice.next) < 2.0 * l2_norm(p.field));

    const Field tiny = cplx(1e-90) * p.field;
    CHECK_THROWS_WITH_AS(petviashvili_step(tiny, p.v, p.mu, SolveConfig{}), doctest::Contains("degenerate iterate"),
                         DegenerateIterate);
  }

  TEST_CASE("speed preconditions") {
    const Grid& g = testutil::pinned_grid();
    CHECK_THROWS_WITH_AS(solve_profile(1.2, g, SolveConfig{}), doctest::Contains("v out of range"), InvalidArgument);
    CHECK_THROWS_AS(solve_profile(0.0, g, SolveConfig{}), InvalidArgument);
  }

  TEST_CASE("non-convergence carries the best iterate") {
    SolveConfig c;
    c.max_iter = 3;
    try {
      solve_profile(0.5, testutil::pinned_grid(), c);
      FAIL("expected NonConvergenceError");
    } catch (const NonConvergenceError& e) {
      CHECK_FALSE(e.best().converged);
      CHECK(e.best().iterations <= 3);
      CHECK(e.best().residual_l2 > 1e-10);
    }
  }

  TEST_CASE("gauge fixing") {
    const WaveProfile& p = testutil::profile(0.7);
    const Field& q = p.field;
    const std::size_t o = q.grid().origin_index();
    CHECK(std::abs(std::arg(q[o])) < 1e-12);
    CHECK(std::abs(peak_position(q)) < 1e-8);

    // Off-grid translation and rotation are undone.
    const Field moved = std::polar(1.0, 1.3) * apply_symbol(q, Translate{0.37 * q.grid().dx() + 2.0});
    CHECK(peak_position(moved) == doctest::Approx(0.37 * q.grid().dx() + 2.0).epsilon(1e-8));
    const Field back = gauge_fix(moved);
    CHECK(l2_norm(back - q) / l2_norm(q) < 1e-8);

    // Solves from a rotated, shifted guess land on the same gauge representative.
    SolveConfig c;
    c.guess = FromProfile{std::polar(1.0, -0.8) * apply_symbol(q, Translate{-3.3})};
    const WaveProfile again = solve_profile(0.7, q.grid(), c);
    CHECK(l2_norm(again.field - q) / l2_norm(q) < 1e-7);
  }

  TEST_CASE("sweep") {
    const Grid& g = testutil::pinned_grid();
    CHECK(sweep(std::vector<double>{}, g, SolveConfig{}).empty());
    CHECK_THROWS_AS(sweep(std::vector<double>{0.5, 0.3}, g, SolveConfig{}), InvalidArgument);
    CHECK_THROWS_AS(sweep(std::vector<double>{0.5, 0.5}, g, SolveConfig{}), InvalidArgument);

    const std::vector<double> vs{0.1, 0.3, 0.5, 0.7, 0.9};
    const auto out = sweep(vs, g, SolveConfig{});
    REQUIRE(out.size() == 5);
    for (const auto& r : out) REQUIRE(r.converged());
    // Mass peaks near v = 0.2 (numpy: 1.40510 at 0.1, 1.41762 at 0.3) and
    // falls from there on.
    CHECK(out[0].profile->report.mass == doctest::Approx(1.40510).epsilon(1e-5));
    CHECK(out[1].profile->report.mass == doctest::Approx(1.41762).epsilon(1e-5));
    for (std::size_t i = 2; i < out.size(); ++i)
      CHECK(out[i].profile->report.mass < out[i - 1].profile->report.mass);
    // Parallel cold starts give the same profiles as sequential cold starts.
    SweepOptions par;
    par.continuation = false;
    par.threads = 2;
    const std::vector<double> two{0.3, 0.6};
    const auto a = sweep(two, g, SolveConfig{}, par);
    par.threads = 1;
    const auto b = sweep(two, g, SolveConfig{}, par);
    for (int i = 0; i < 2; ++i) {
      REQUIRE(a[i].converged());
      CHECK(std::equal(a[i].profile->field.values().begin(), a[i].profile->field.values().end(),
                       b[i].profile->field.values().begin()));
    }
  }

  TEST_CASE("continuation reaches v=0.99") {
    const Grid& g = testutil::pinned_grid();
    const std::vector<double> vs{0.96, 0.97, 0.98, 0.99};
    const auto out = sweep(vs, g, SolveConfig{});
    for (const auto& e : out) CHECK(e.converged());
  }
}
