#include "halfwave/greenfn.hpp"

#include <gsl/gsl_errno.h>
#include <gsl/gsl_integration.h>

#include <algorithm>
#include <cmath>
#include <memory>
#include <mutex>
#include <numbers>
#include <ostream>
#include <sstream>
#include <utility>

#include "halfwave/errors.hpp"
#include "halfwave/profile_io.hpp"

namespace halfwave {

using std::numbers::pi;

std::string to_string(GreenMethod m) {
  switch (m) {
    case GreenMethod::FourierQuadrature: return "fourier_quadrature";
    case GreenMethod::SeriesTwoTerms: return "series_two_terms";
    case GreenMethod::ClosedPieces: return "closed_pieces";
  }
  return "unknown";
}

double phase_scale(GreenConvention c) { return c == GreenConvention::TwoPiPhase ? 2.0 * pi : 1.0; }

double poisson_kernel(double x, double y) { return y / (pi * (x * x + y * y)); }

double green_hat(double xi, double y) { return std::exp(-y * std::abs(xi)) / (1.0 + std::abs(xi) + xi); }

cplx green_negative_part(double x, double y, GreenConvention conv) {
  if (!(y > 0.0)) throw InvalidArgument("boundary evaluation unsupported (y must be > 0)");
  return 1.0 / cplx(y, -phase_scale(conv) * x);
}

namespace {

constexpr double kEpsAbs = 1e-15;
constexpr double kEpsRel = 1e-10;
constexpr std::size_t kLimit = 2000;

void silence_gsl() {
  static std::once_flag once;
  std::call_once(once, [] { gsl_set_error_handler_off(); });
}

struct WorkspaceDeleter {
  void operator()(gsl_integration_workspace* w) const { gsl_integration_workspace_free(w); }
};
struct TableDeleter {
  void operator()(gsl_integration_qawo_table* t) const { gsl_integration_qawo_table_free(t); }
};

// int_0^{40/y} amp(xi) e^{-i omega xi} dxi for a smooth real amplitude, by
// QAWO on the cosine and sine parts.
template <class Amp>
cplx oscillatory(Amp amp, double omega, double y) {
  silence_gsl();
  const double upper = 40.0 / y;
  std::unique_ptr<gsl_integration_workspace, WorkspaceDeleter> ws(gsl_integration_workspace_alloc(kLimit));
  std::unique_ptr<gsl_integration_qawo_table, TableDeleter> table(
      gsl_integration_qawo_table_alloc(std::abs(omega), upper, GSL_INTEG_COSINE, 64));

  gsl_function fn;
  fn.function = [](double xi, void* p) { return (*static_cast<Amp*>(p))(xi); };
  fn.params = &amp;

  double re = 0.0, re_err = 0.0, im = 0.0, im_err = 0.0;
  int status = gsl_integration_qawo(&fn, 0.0, kEpsAbs, kEpsRel, kLimit, ws.get(), table.get(), &re, &re_err);
  if (status == GSL_SUCCESS && omega != 0.0) {
    gsl_integration_qawo_table_set(table.get(), std::abs(omega), upper, GSL_INTEG_SINE);
    status = gsl_integration_qawo(&fn, 0.0, kEpsAbs, kEpsRel, kLimit, ws.get(), table.get(), &im, &im_err);
    if (omega > 0.0) im = -im;
  }
  const double err = std::hypot(re_err, im_err);
  if (status != GSL_SUCCESS) {
    const double scale = std::hypot(re, im);
    // GSL flags roundoff when the target is below what doubles can deliver;
    // accept that case if the achieved error still meets the relative goal.
    if (!(status == GSL_EROUND && err <= 1e-8 * scale)) {
      std::ostringstream msg;
      msg << "oscillatory quadrature failed (" << gsl_strerror(status) << "), error estimate " << err;
      throw QuadratureError(msg.str(), err);
    }
  }
  return {re, im};
}

}  // namespace

cplx green_eval(double x, double y, GreenMethod method, GreenConvention conv) {
  if (!(y > 0.0)) throw InvalidArgument("boundary evaluation unsupported (y must be > 0)");
  const double omega = phase_scale(conv) * x;
  const cplx a(y, omega);
  switch (method) {
    case GreenMethod::FourierQuadrature: {
      // xi < 0 folded onto (0, inf): e^{-y xi} e^{+i omega xi}.
      const cplx neg = oscillatory([y](double xi) { return std::exp(-y * xi); }, -omega, y);
      const cplx pos = oscillatory([y](double xi) { return std::exp(-y * xi) / (1.0 + 2.0 * xi); }, omega, y);
      return neg + pos;
    }
    case GreenMethod::SeriesTwoTerms: {
      const cplx rem =
          oscillatory([y](double xi) { return std::exp(-y * xi) / std::pow(1.0 + 2.0 * xi, 3); }, omega, y);
      return 2.0 * y / (y * y + omega * omega) - 2.0 / (a * a) + 8.0 / (a * a) * rem;
    }
    case GreenMethod::ClosedPieces: {
      const cplx rem =
          oscillatory([y](double xi) { return std::exp(-y * xi) / std::pow(1.0 + 2.0 * xi, 2); }, omega, y);
      return green_negative_part(x, y, conv) + 1.0 / a - 2.0 / a * rem;
    }
  }
  throw InvalidArgument("unknown Green's function method");
}

GreenPoint green_point(double x, double y, GreenMethod method) { return {x, y, green_eval(x, y, method), method}; }

namespace {

double bound_ratio(double x, double y, cplx value) {
  return std::abs(value) * (y * y + 4.0 * pi * pi * x * x) / (1.0 + y);
}

}  // namespace

DecayBound decay_bound_check(std::span<const GreenPoint> points) {
  if (points.empty()) throw InvalidArgument("decay bound check needs at least one point");
  DecayBound out{0.0, {}};
  for (const auto& p : points) {
    const cplx g = green_eval(p.x, p.y, GreenMethod::ClosedPieces);
    const double r = bound_ratio(p.x, p.y, g);
    out.ratios.push_back(r);
    out.constant = std::max(out.constant, r);
  }
  return out;
}

namespace {

// Five-point stencil sum and centre value.
std::pair<cplx, cplx> stencil(double x, double y, double h, GreenConvention conv) {
  if (!(h > 0.0)) throw InvalidArgument("stencil step must be positive");
  if (!(y - h > 0.0)) throw InvalidArgument("stencil leaves the half-plane (need y - h > 0)");
  auto G = [conv](double xx, double yy) { return green_eval(xx, yy, GreenMethod::ClosedPieces, conv); };
  const cplx centre = G(x, y);
  return {G(x + h, y) + G(x - h, y) + G(x, y + h) + G(x, y - h) - 4.0 * centre, centre};
}

}  // namespace

double harmonicity_residual(double x, double y, double h, GreenConvention conv) {
  const auto [sum, centre] = stencil(x, y, h, conv);
  return std::abs(sum) / std::abs(centre);
}

double laplacian_ratio(double x, double y, double h, GreenConvention conv) {
  return harmonicity_residual(x, y, h, conv) / (h * h);
}

void write_green_csv(std::ostream& os, std::span<const GreenPoint> points) {
  os << "# halfwave Green's function G(x,y) of the half-plane problem G - G_y + i G_x = Poisson kernel;"
        " x,y are dimensionless coordinates (y > 0), bound_ratio = |G| (y^2 + 4 pi^2 x^2) / (1 + y)\n";
  os << "x,y,re_G,im_G,abs_G,bound_ratio\n";
  for (const auto& p : points)
    os << format_double(p.x) << ',' << format_double(p.y) << ',' << format_double(p.value.real()) << ','
       << format_double(p.value.imag()) << ',' << format_double(std::abs(p.value)) << ','
       << format_double(bound_ratio(p.x, p.y, p.value)) << '\n';
}

}  // namespace halfwave
