#include <cmath>
#include <numbers>
#include <sstream>

#include "doctest.h"
#include "halfwave/errors.hpp"
#include "halfwave/greenfn.hpp"

using namespace halfwave;
using std::numbers::pi;

namespace {

double rel(cplx a, cplx b) { return std::abs(a - b) / std::abs(b); }

}  // namespace

TEST_SUITE("greenfn") {
  TEST_CASE("Poisson kernel") {
    CHECK(poisson_kernel(0.0, 1.0) == doctest::Approx(1.0 / pi).epsilon(1e-15));
    CHECK(poisson_kernel(2.0, 2.0) == doctest::Approx(1.0 / (2.0 * pi * 2.0)).epsilon(1e-15));
    // Midpoint sum over [-X, X] plus the analytic tails 2 (1/pi) atan-complement.
    const double X = 2000.0, h = 0.01;
    double s = 0.0;
    for (double x = -X + 0.5 * h; x < X; x += h) s += poisson_kernel(x, 1.0) * h;
    s += 2.0 * (0.5 - std::atan(X) / pi);
    CHECK(s == doctest::Approx(1.0).epsilon(1e-6));
  }

  TEST_CASE("symbol") {
    CHECK(green_hat(0.0, 3.0) == 1.0);
    CHECK(green_hat(-2.0, 1.0) == doctest::Approx(std::exp(-2.0)).epsilon(1e-15));
    CHECK(green_hat(2.0, 0.0) == doctest::Approx(0.2).epsilon(1e-15));
    // Boundary condition in frequency space.
    for (int k = -50; k <= 50; ++k) {
      const double xi = 0.37 * k;
      CHECK((1.0 + std::abs(xi) + xi) * green_hat(xi, 0.0) == doctest::Approx(1.0).epsilon(1e-15));
    }
  }

  TEST_CASE("negative-frequency piece") {
    for (double y : {0.5, 1.0, 5.0}) CHECK(green_negative_part(0.0, y) == cplx(1.0 / y, 0.0));
    CHECK(rel(green_negative_part(0.3, 2.0), 1.0 / cplx(2.0, -2.0 * pi * 0.3)) < 1e-15);
  }

  TEST_CASE("three methods agree") {
    // Independent scipy QUADPACK evaluation of the defining integral at (1, 1).
    const cplx ref(0.07798665394408874, 0.02595483315392927);
    for (auto m : {GreenMethod::FourierQuadrature, GreenMethod::SeriesTwoTerms, GreenMethod::ClosedPieces})
      CHECK(rel(green_eval(1.0, 1.0, m), ref) < 1e-9);
    for (double x : {-30.0, -0.1, 0.0, 0.25, 3.0, 100.0})
      for (double y : {0.5, 1.0, 5.0}) {
        const cplx a = green_eval(x, y, GreenMethod::FourierQuadrature);
        CHECK(rel(green_eval(x, y, GreenMethod::SeriesTwoTerms), a) < 1e-6);
        CHECK(rel(green_eval(x, y, GreenMethod::ClosedPieces), a) < 1e-6);
      }
  }

  TEST_CASE("conjugation symmetry") {
    for (double x : {0.1, 1.0, 7.0})
      CHECK(rel(green_eval(-x, 1.0, GreenMethod::ClosedPieces), std::conj(green_eval(x, 1.0, GreenMethod::ClosedPieces))) <
            1e-9);
  }

  TEST_CASE("boundary is rejected") {
    CHECK_THROWS_WITH_AS(green_eval(0.0, 0.0, GreenMethod::ClosedPieces),
                         doctest::Contains("boundary evaluation unsupported"), InvalidArgument);
    CHECK_THROWS_AS(green_eval(1.0, -1.0, GreenMethod::FourierQuadrature), InvalidArgument);
  }

  TEST_CASE("decay bound") {
    std::vector<GreenPoint> single{{0.0, 1.0, {}, GreenMethod::ClosedPieces}};
    const auto b0 = decay_bound_check(single);
    CHECK(b0.constant == doctest::Approx(std::abs(green_eval(0.0, 1.0, GreenMethod::ClosedPieces)) / 2.0));

    std::vector<GreenPoint> pts;
    for (int i = 0; i <= 20; ++i) pts.push_back({std::pow(10.0, i / 10.0), 1.0, {}, GreenMethod::ClosedPieces});
    const auto b = decay_bound_check(pts);
    const auto [lo, hi] = std::minmax_element(b.ratios.begin(), b.ratios.end());
    CHECK(*hi / *lo < 2.0);
    CHECK(b.constant == *hi);
    CHECK_THROWS_AS(decay_bound_check(std::vector<GreenPoint>{}), InvalidArgument);
  }

  TEST_CASE("harmonicity") {
    const double r1 = harmonicity_residual(1.0, 2.0, 0.2);
    const double r2 = harmonicity_residual(1.0, 2.0, 0.1);
    const double r3 = harmonicity_residual(1.0, 2.0, 0.05);
    CHECK(r1 / r2 == doctest::Approx(4.0).epsilon(0.1));
    CHECK(r2 / r3 == doctest::Approx(4.0).epsilon(0.1));
    CHECK(harmonicity_residual(-1.0, 2.0, 0.1) == doctest::Approx(r2).epsilon(1e-8));
    CHECK_THROWS_AS(harmonicity_residual(1.0, 0.5, 0.5), InvalidArgument);
    CHECK_THROWS_AS(harmonicity_residual(1.0, 0.5, 1.0), InvalidArgument);
    // With the 2 pi phase the Laplacian itself stays order one (scipy: 3.60 at h = 0.05)...
    CHECK(laplacian_ratio(1.0, 2.0, 0.05) == doctest::Approx(3.604).epsilon(2e-3));
    // ...while the unscaled form is harmonic: the stencil sum falls like h^4.
    const double u2 = harmonicity_residual(1.0, 2.0, 0.1, GreenConvention::Unscaled);
    const double u3 = harmonicity_residual(1.0, 2.0, 0.05, GreenConvention::Unscaled);
    CHECK(u2 / u3 == doctest::Approx(16.0).epsilon(0.1));
  }

  TEST_CASE("CSV export") {
    std::vector<GreenPoint> pts{green_point(0.5, 1.0, GreenMethod::ClosedPieces),
                                green_point(2.0, 5.0, GreenMethod::SeriesTwoTerms)};
    std::ostringstream os;
    write_green_csv(os, pts);
    const std::string s = os.str();
    CHECK(s.rfind("# ", 0) == 0);
    CHECK(s.find("\nx,y,re_G,im_G,abs_G,bound_ratio\n") != std::string::npos);
    CHECK(std::count(s.begin(), s.end(), '\n') == 4);
    CHECK(to_string(GreenMethod::SeriesTwoTerms) == "series_two_terms");
  }
}
