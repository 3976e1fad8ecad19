#include "halfwave/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "fft.hpp"
#include "halfwave/errors.hpp"

namespace halfwave {

Grid::Grid(long n, double length) {
  if (n % 2 != 0) throw InvalidArgument("odd point count: " + std::to_string(n));
  if (n < 16) throw InvalidArgument("point count below 16: " + std::to_string(n));
  if (!(length > 0.0) || !std::isfinite(length))
    throw InvalidArgument("nonpositive domain length");
  n_ = static_cast<std::size_t>(n);
  length_ = length;
}

double Grid::xi(std::size_t s) const noexcept {
  return 2.0 * std::numbers::pi * static_cast<double>(k(s)) / length_;
}

std::vector<double> Grid::positions() const {
  std::vector<double> out(n_);
  for (std::size_t j = 0; j < n_; ++j) out[j] = x(j);
  return out;
}

std::vector<double> Grid::frequencies() const {
  std::vector<double> out(n_);
  for (std::size_t s = 0; s < n_; ++s) out[s] = xi(s);
  return out;
}

Grid make_grid(long n, double length) { return Grid(n, length); }

Field::Field(const Grid& grid, std::vector<cplx> values) : grid_(grid), values_(std::move(values)) {
  if (values_.size() != grid_.n()) throw InvalidArgument("field size does not match grid");
  for (const auto& z : values_)
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
      throw InvalidArgument("field contains non-finite samples");
}

Field Field::zeros(const Grid& grid) { return Field(grid, std::vector<cplx>(grid.n())); }

namespace {

void require_same_grid(const Field& a, const Field& b) {
  if (!(a.grid() == b.grid())) throw InvalidArgument("fields live on different grids");
}

}  // namespace

Field operator+(const Field& a, const Field& b) {
  require_same_grid(a, b);
  std::vector<cplx> v(a.size());
  for (std::size_t j = 0; j < v.size(); ++j) v[j] = a[j] + b[j];
  return Field(a.grid(), std::move(v));
}

Field operator-(const Field& a, const Field& b) {
  require_same_grid(a, b);
  std::vector<cplx> v(a.size());
  for (std::size_t j = 0; j < v.size(); ++j) v[j] = a[j] - b[j];
  return Field(a.grid(), std::move(v));
}

Field operator*(cplx s, const Field& a) {
  std::vector<cplx> v(a.size());
  for (std::size_t j = 0; j < v.size(); ++j) v[j] = s * a[j];
  return Field(a.grid(), std::move(v));
}

Spectrum::Spectrum(const Grid& grid, std::vector<cplx> coeffs) : grid_(grid), coeffs_(std::move(coeffs)) {
  if (coeffs_.size() != grid_.n()) throw InvalidArgument("spectrum size does not match grid");
}

// The sample origin sits at -L/2, so exp(-i xi_k x_0) = (-1)^k, and (-1)^k equals
// (-1)^s for the storage slot because n is even.
Spectrum to_spectrum(const Field& f) {
  const Grid& g = f.grid();
  std::vector<cplx> c(f.values().begin(), f.values().end());
  detail::dft_forward(c);
  const double dx = g.dx();
  for (std::size_t s = 0; s < c.size(); ++s) c[s] *= (s % 2 == 0) ? dx : -dx;
  return Spectrum(g, std::move(c));
}

Field to_field(const Spectrum& sp) {
  const Grid& g = sp.grid();
  std::vector<cplx> v(sp.coeffs().begin(), sp.coeffs().end());
  const double inv_len = 1.0 / g.length();
  for (std::size_t s = 0; s < v.size(); ++s) v[s] *= (s % 2 == 0) ? inv_len : -inv_len;
  detail::dft_backward(v);
  return Field(g, std::move(v));
}

namespace {

void check_symbol(const Symbol& sym) {
  if (const auto* hw = std::get_if<HalfWaveSymbol>(&sym)) {
    if (!(hw->v > 0.0 && hw->v <= 1.0)) throw InvalidArgument("half-wave symbol needs v in (0,1]");
    if (!(hw->mu > 0.0)) throw InvalidArgument("half-wave symbol needs mu > 0");
  }
}

}  // namespace

cplx symbol_value(const Symbol& sym, const Grid& g, std::size_t s) {
  using std::numbers::pi;
  const double xi = g.xi(s);
  const double xo = g.xi_odd(s);
  return std::visit(
      [&](const auto& op) -> cplx {
        using T = std::decay_t<decltype(op)>;
        if constexpr (std::is_same_v<T, SqrtLaplacian>) {
          return std::abs(xi);
        } else if constexpr (std::is_same_v<T, Derivative>) {
          return cplx(0.0, xo);
        } else if constexpr (std::is_same_v<T, Hilbert>) {
          return cplx(0.0, -pi * ((xo > 0.0) - (xo < 0.0)));
        } else if constexpr (std::is_same_v<T, HalfWaveSymbol>) {
          return std::abs(xi) - op.v * xo + op.mu;
        } else if constexpr (std::is_same_v<T, FreeFlow>) {
          return std::polar(1.0, -std::abs(xi) * op.t);
        } else {
          return std::polar(1.0, -xi * op.a);
        }
      },
      sym);
}

Spectrum apply_symbol(const Spectrum& f, const Symbol& sym) {
  check_symbol(sym);
  const Grid& g = f.grid();
  std::vector<cplx> c(f.coeffs().begin(), f.coeffs().end());
  for (std::size_t s = 0; s < c.size(); ++s) c[s] *= symbol_value(sym, g, s);
  return Spectrum(g, std::move(c));
}

Field apply_symbol(const Field& f, const Symbol& sym) { return to_field(apply_symbol(to_spectrum(f), sym)); }

Field apply_linear(const Field& f, double v, double mu) { return apply_symbol(f, HalfWaveSymbol{v, mu}); }

Field resolvent(const Field& f, double v, double mu) {
  if (!(v > 0.0 && v < 1.0)) throw InvalidArgument("resolvent needs 0 < v < 1");
  if (!(mu > 0.0)) throw InvalidArgument("resolvent needs mu > 0");
  const Grid& g = f.grid();
  Spectrum sp = to_spectrum(f);
  std::vector<cplx> c(sp.coeffs().begin(), sp.coeffs().end());
  for (std::size_t s = 0; s < c.size(); ++s) c[s] /= std::abs(g.xi(s)) - v * g.xi_odd(s) + mu;
  return to_field(Spectrum(g, std::move(c)));
}

Field resolvent(const Field& f, double v) { return resolvent(f, v, 1.0 - v); }

double resolvent_bound_alpha(double v) {
  if (!(v > 0.0 && v < 1.0)) throw InvalidArgument("resolvent bound needs 0 < v < 1");
  return 1.0 / (1.0 - v);
}

double lattice_resolvent_bound(const Grid& g, double v) {
  if (!(v > 0.0 && v < 1.0)) throw InvalidArgument("resolvent bound needs 0 < v < 1");
  double best = 0.0;
  for (std::size_t s = 0; s < g.n(); ++s) {
    const double xi = g.xi(s);
    best = std::max(best, (1.0 + std::abs(xi)) / (std::abs(xi) - v * g.xi_odd(s) + 1.0 - v));
  }
  return best;
}

cplx inner(const Field& f, const Field& g) {
  require_same_grid(f, g);
  cplx acc = 0.0;
  for (std::size_t j = 0; j < f.size(); ++j) acc += std::conj(f[j]) * g[j];
  return acc * f.grid().dx();
}

double l2_norm(const Field& f) {
  double acc = 0.0;
  for (const auto& z : f.values()) acc += std::norm(z);
  return std::sqrt(acc * f.grid().dx());
}

}  // namespace halfwave
