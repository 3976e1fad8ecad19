#pragma once

// Periodic grid, discrete Fourier transform and the Fourier multipliers used
// throughout the library.
//
// Transform convention (approximates the continuum integral):
//   forward   u_hat_k = dx * sum_j u_j exp(-i xi_k x_j)
//   inverse   u_j     = (1/L) * sum_k u_hat_k exp(i xi_k x_j)
// with x_j = -L/2 + j dx and xi_k = 2 pi k / L, k in [-n/2, n/2).
// Spectral coefficients are stored in FFT order: slot s holds k = s for
// s < n/2 and k = s - n otherwise; slot n/2 is the Nyquist mode k = -n/2.

#include <complex>
#include <cstddef>
#include <span>
#include <variant>
#include <vector>

namespace halfwave {

using cplx = std::complex<double>;

class Grid {
 public:
  /// Throws InvalidArgument for odd n, n < 16 or non-positive length.
  Grid(long n, double length);

  std::size_t n() const noexcept { return n_; }
  double length() const noexcept { return length_; }
  double dx() const noexcept { return length_ / static_cast<double>(n_); }

  /// Sample position x_j = -L/2 + j dx.
  double x(std::size_t j) const noexcept {
    return -0.5 * length_ + static_cast<double>(j) * dx();
  }
  /// Signed wavenumber index of storage slot s.
  long k(std::size_t s) const noexcept {
    return s < n_ / 2 ? static_cast<long>(s) : static_cast<long>(s) - static_cast<long>(n_);
  }
  double xi(std::size_t s) const noexcept;
  bool is_nyquist(std::size_t s) const noexcept { return s == n_ / 2; }
  /// Frequency with the Nyquist slot mapped to zero; used by odd symbols.
  double xi_odd(std::size_t s) const noexcept { return is_nyquist(s) ? 0.0 : xi(s); }
  /// Storage slot of the x = 0 sample.
  std::size_t origin_index() const noexcept { return n_ / 2; }

  std::vector<double> positions() const;
  std::vector<double> frequencies() const;

  bool operator==(const Grid&) const = default;

 private:
  std::size_t n_;
  double length_;
};

Grid make_grid(long n, double length);

/// Complex samples of a function on a Grid.  Immutable once built.
class Field {
 public:
  /// Throws InvalidArgument on size mismatch or non-finite samples.
  Field(const Grid& grid, std::vector<cplx> values);

  static Field zeros(const Grid& grid);

  template <class F>
  static Field from_function(const Grid& grid, F&& fn) {
    std::vector<cplx> v(grid.n());
    for (std::size_t j = 0; j < grid.n(); ++j) v[j] = cplx(fn(grid.x(j)));
    return Field(grid, std::move(v));
  }

  const Grid& grid() const noexcept { return grid_; }
  std::span<const cplx> values() const noexcept { return values_; }
  const cplx& operator[](std::size_t j) const noexcept { return values_[j]; }
  std::size_t size() const noexcept { return values_.size(); }

 private:
  Grid grid_;
  std::vector<cplx> values_;
};

Field operator+(const Field& a, const Field& b);
Field operator-(const Field& a, const Field& b);
Field operator*(cplx s, const Field& a);

/// Fourier coefficients of a Field, FFT storage order.
class Spectrum {
 public:
  Spectrum(const Grid& grid, std::vector<cplx> coeffs);

  const Grid& grid() const noexcept { return grid_; }
  std::span<const cplx> coeffs() const noexcept { return coeffs_; }
  const cplx& operator[](std::size_t s) const noexcept { return coeffs_[s]; }
  std::size_t size() const noexcept { return coeffs_.size(); }

 private:
  Grid grid_;
  std::vector<cplx> coeffs_;
};

Spectrum to_spectrum(const Field& f);
Field to_field(const Spectrum& s);

// Fourier multipliers.
struct SqrtLaplacian {};           ///< |xi|
struct Derivative {};              ///< i xi, the action of d/dx
struct Hilbert {};                 ///< -i pi sign(xi)
struct HalfWaveSymbol {            ///< |xi| - v xi + mu
  double v;
  double mu;
};
struct FreeFlow {                  ///< exp(-i |xi| t)
  double t;
};
struct Translate {                 ///< exp(-i xi a): f(x) -> f(x - a)
  double a;
};

using Symbol = std::variant<SqrtLaplacian, Derivative, Hilbert, HalfWaveSymbol, FreeFlow, Translate>;

/// Symbol value at storage slot s.  Odd symbols vanish on the Nyquist slot.
cplx symbol_value(const Symbol& sym, const Grid& grid, std::size_t s);

Spectrum apply_symbol(const Spectrum& f, const Symbol& sym);
Field apply_symbol(const Field& f, const Symbol& sym);

/// The traveling-wave linear operator |D| + i v d/dx + mu (symbol m_v).
Field apply_linear(const Field& f, double v, double mu);

/// A_v f: division by m_v(xi) = |xi| - v xi + mu.  Requires 0 < v < 1, mu > 0.
Field resolvent(const Field& f, double v, double mu);
Field resolvent(const Field& f, double v);

/// sup_xi (1+|xi|)/m_v(xi) with mu = 1-v, which equals 1/(1-v).
double resolvent_bound_alpha(double v);
/// Same supremum taken over the grid lattice only.
double lattice_resolvent_bound(const Grid& grid, double v);

/// dx-weighted inner product sum conj(f) g dx.
cplx inner(const Field& f, const Field& g);
double l2_norm(const Field& f);

}  // namespace halfwave
