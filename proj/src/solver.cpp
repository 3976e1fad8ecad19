#include "halfwave/solver.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <sstream>

#include "halfwave/errors.hpp"

namespace halfwave {

void SolveConfig::validate() const {
  if (!(gamma > 1.0 && gamma < 2.0)) throw InvalidArgument("gamma must lie in (1,2)");
  if (!(tol_residual > 0.0) || !(tol_increment > 0.0)) throw InvalidArgument("tolerances must be positive");
  if (max_iter <= 0) throw InvalidArgument("max_iter must be positive");
}

double default_carrier(double v) { return std::max(0.0, 2.0 * (v - 0.5)); }

namespace {

void check_speed(double v) {
  if (!(v > 0.0 && v < 1.0)) throw InvalidArgument("v out of range (0,1)");
}

std::vector<cplx> quartic(const Field& w) {
  std::vector<cplx> out(w.size());
  for (std::size_t j = 0; j < w.size(); ++j) {
    const double a = std::abs(w[j]);
    out[j] = a * a * a * w[j];
  }
  return out;
}

}  // namespace

Field initial_guess(const Grid& grid, double v, const SolveConfig& cfg) {
  check_speed(v);
  if (const auto* from = std::get_if<FromProfile>(&cfg.guess)) {
    if (!(from->field.grid() == grid)) throw InvalidArgument("warm-start profile lives on a different grid");
    return from->field;
  }
  const auto& packet = std::get<GaussianPacket>(cfg.guess);
  if (!(packet.width > 0.0)) throw InvalidArgument("packet width must be positive");
  const double carrier = packet.carrier.value_or(default_carrier(v));
  const double w2 = packet.width * packet.width;
  return Field::from_function(grid, [&](double x) { return std::polar(std::exp(-x * x / w2), carrier * x); });
}

StepResult petviashvili_step(const Field& w, double v, double mu, const SolveConfig& cfg) {
  const Grid& g = w.grid();
  const Spectrum ws = to_spectrum(w);
  double num = 0.0;
  for (std::size_t s = 0; s < g.n(); ++s) num += (std::abs(g.xi(s)) - v * g.xi_odd(s) + mu) * std::norm(ws[s]);
  num /= g.length();

  const Field nl(g, quartic(w));
  const double den = std::real(inner(nl, w));
  const double stab = num / den;
  if (!(den > 0.0) || !std::isfinite(stab)) throw DegenerateIterate("degenerate iterate: Re<|w|^3 w, w> <= 0");

  const Field next = resolvent(nl, v, mu);
  return {std::pow(stab, cfg.gamma) * next, stab};
}

double profile_residual(const Field& q, double v, double mu) {
  const Field lin = apply_linear(q, v, mu);
  double acc = 0.0;
  for (std::size_t j = 0; j < q.size(); ++j) {
    const double a = std::abs(q[j]);
    acc += std::norm(lin[j] - a * a * a * q[j]);
  }
  return std::sqrt(acc * q.grid().dx());
}

double peak_position(const Field& w) {
  const Grid& g = w.grid();
  std::size_t jmax = 0;
  for (std::size_t j = 1; j < w.size(); ++j)
    if (std::norm(w[j]) > std::norm(w[jmax])) jmax = j;
  if (std::norm(w[jmax]) == 0.0) return 0.0;

  // w(x) = (1/L) sum_k c_k e^{i xi_k x}; Newton on d|w|^2/dx = 0.
  const Spectrum sp = to_spectrum(w);
  const double x0 = g.x(jmax);
  double pos = x0;
  for (int it = 0; it < 30; ++it) {
    cplx f = 0.0, f1 = 0.0, f2 = 0.0;
    for (std::size_t s = 0; s < g.n(); ++s) {
      const double xi = g.xi(s);
      const cplx term = sp[s] * std::polar(1.0, xi * pos);
      f += term;
      f1 += cplx(0.0, xi) * term;
      f2 -= xi * xi * term;
    }
    const double d1 = 2.0 * std::real(std::conj(f) * f1);
    const double d2 = 2.0 * std::real(std::conj(f) * f2 + std::norm(f1));
    if (!(d2 < 0.0)) break;
    double step = -d1 / d2;
    step = std::clamp(step, -g.dx(), g.dx());
    pos += step;
    if (std::abs(step) < 1e-14 * std::max(1.0, std::abs(pos))) break;
  }
  // Stay with the grid maximum if Newton wandered off its cell.
  if (std::abs(pos - x0) > g.dx()) pos = x0;
  return pos;
}

Field gauge_fix(const Field& w) {
  const double pos = peak_position(w);
  const Field centred = apply_symbol(w, Translate{-pos});
  const cplx at_origin = centred[centred.grid().origin_index()];
  if (std::abs(at_origin) == 0.0) return centred;
  return std::polar(1.0, -std::arg(at_origin)) * centred;
}

WaveProfile make_profile(double v, Field field, int iterations, bool converged) {
  const double mu = 1.0 - v;
  const double res = profile_residual(field, v, mu);
  FunctionalReport rep = functional_report(field, v, mu);
  return WaveProfile{v, mu, std::move(field), res, iterations, converged, rep};
}

WaveProfile solve_profile(double v, const Grid& grid, const SolveConfig& cfg) {
  check_speed(v);
  cfg.validate();
  const double mu = 1.0 - v;
  const bool fix = cfg.gauge == Gauge::PhasePeakReal;

  Field w = initial_guess(grid, v, cfg);
  if (fix) w = gauge_fix(w);

  double residual = profile_residual(w, v, mu);
  Field best = w;
  double best_residual = residual;
  int it = 0;
  bool converged = residual <= cfg.tol_residual;
  bool stalled = false;
  while (!converged && !stalled && it < cfg.max_iter) {
    ++it;
    Field next = petviashvili_step(w, v, mu, cfg).next;
    if (fix) next = gauge_fix(next);
    residual = profile_residual(next, v, mu);
    const double increment = l2_norm(next - w) / l2_norm(w);
    w = std::move(next);
    if (residual < best_residual) {
      best_residual = residual;
      best = w;
    }
    converged = residual <= cfg.tol_residual;
    stalled = increment <= cfg.tol_increment;
  }
  if (converged) return make_profile(v, std::move(w), it, true);

  std::ostringstream msg;
  msg << (stalled ? "iteration stalled" : "max_iter reached") << " at v=" << v << " after " << it
      << " iterations; best residual " << best_residual;
  throw NonConvergenceError(msg.str(), make_profile(v, std::move(best), it, false));
}

namespace {

SweepEntry solve_entry(double v, const Grid& grid, const SolveConfig& cfg) {
  SweepEntry e{v, std::nullopt, {}};
  try {
    e.profile = solve_profile(v, grid, cfg);
  } catch (const NonConvergenceError& err) {
    e.profile = err.best();
    e.error = err.what();
  } catch (const std::exception& err) {
    e.error = err.what();
  }
  return e;
}

}  // namespace

std::vector<SweepEntry> sweep(std::span<const double> vs, const Grid& grid, const SolveConfig& cfg,
                              const SweepOptions& opts) {
  for (std::size_t i = 0; i < vs.size(); ++i) {
    check_speed(vs[i]);
    if (i > 0 && !(vs[i] > vs[i - 1])) throw InvalidArgument("sweep speeds must be strictly ascending");
  }
  std::vector<SweepEntry> out;
  out.reserve(vs.size());

  if (!opts.continuation && opts.threads > 1) {
    std::vector<std::future<SweepEntry>> jobs;
    for (std::size_t start = 0; start < vs.size(); start += opts.threads) {
      jobs.clear();
      for (std::size_t i = start; i < std::min(vs.size(), start + opts.threads); ++i)
        jobs.push_back(std::async(std::launch::async, solve_entry, vs[i], std::cref(grid), std::cref(cfg)));
      for (auto& j : jobs) out.push_back(j.get());
    }
    return out;
  }

  const WaveProfile* previous = nullptr;
  for (double v : vs) {
    SolveConfig local = cfg;
    if (opts.continuation && previous) {
      const double scale = std::cbrt((1.0 - v) / previous->mu);
      local.guess = FromProfile{scale * previous->field};
    }
    out.push_back(solve_entry(v, grid, local));
    if (out.back().converged()) previous = &*out.back().profile;
  }
  return out;
}

}  // namespace halfwave
