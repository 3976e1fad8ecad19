#pragma once

// Green's function of the half-plane boundary problem, in the form
//     G(x, y) = int e^{-y|xi|} e^{-i c x xi} / (1 + |xi| + xi) dxi
// with c = 2 pi (TwoPiPhase, the default) or c = 1 (Unscaled).  Only the
// Unscaled form is harmonic in y > 0; with c = 2 pi the Laplacian is
// (1 - 4 pi^2) times the xi^2-weighted transform.

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "halfwave/spectral.hpp"

namespace halfwave {

enum class GreenMethod {
  FourierQuadrature,  ///< the defining integral, split at xi = 0
  SeriesTwoTerms,     ///< two integrations by parts plus a quadrature remainder
  ClosedPieces,       ///< I1 in closed form, I2 after one integration by parts
};

std::string to_string(GreenMethod m);

enum class GreenConvention { TwoPiPhase, Unscaled };

/// Frequency of the phase per unit x: 2 pi or 1.
double phase_scale(GreenConvention c);

struct GreenPoint {
  double x;
  double y;
  cplx value;
  GreenMethod method;
};

/// (1/pi) y / (x^2 + y^2).
double poisson_kernel(double x, double y);

/// exp(-y|xi|) / (1 + |xi| + xi).
double green_hat(double xi, double y);

/// Throws InvalidArgument for y <= 0 and QuadratureError when the oscillatory
/// quadrature misses its target (relative 1e-10, absolute 1e-15).
cplx green_eval(double x, double y, GreenMethod method, GreenConvention conv = GreenConvention::TwoPiPhase);
GreenPoint green_point(double x, double y, GreenMethod method);

/// I1 = int_{-inf}^0 e^{y xi} e^{-i c x xi} dxi = 1/(y - i c x).
cplx green_negative_part(double x, double y, GreenConvention conv = GreenConvention::TwoPiPhase);

struct DecayBound {
  double constant;                 ///< max |G| (y^2 + 4 pi^2 x^2) / (1 + y)
  std::vector<double> ratios;      ///< the same ratio per input point
};

/// Evaluates each (x, y) with ClosedPieces.  Throws on an empty list.
DecayBound decay_bound_check(std::span<const GreenPoint> points);

/// |five-point stencil sum of G| / |G| at (x, y), i.e. the discrete Laplacian
/// scaled by h^2 / |G|.  Throws unless 0 < h < y.
double harmonicity_residual(double x, double y, double h, GreenConvention conv = GreenConvention::TwoPiPhase);

/// |discrete Laplacian of G| / |G| without the h^2 scaling; tends to |Delta G| / |G|.
double laplacian_ratio(double x, double y, double h, GreenConvention conv = GreenConvention::TwoPiPhase);

/// Columns x,y,re_G,im_G,abs_G,bound_ratio.
void write_green_csv(std::ostream& os, std::span<const GreenPoint> points);

}  // namespace halfwave
