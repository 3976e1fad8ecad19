#include "halfwave/evolution.hpp"

#include <cmath>
#include <ostream>
#include <sstream>

#include "fft.hpp"
#include "halfwave/errors.hpp"
#include "halfwave/functionals.hpp"
#include "halfwave/profile_io.hpp"

namespace halfwave {

Field linear_flow(const Field& f, double t) { return apply_symbol(f, FreeFlow{t}); }

Field nonlinear_flow(const Field& f, double t) {
  std::vector<cplx> v(f.size());
  for (std::size_t j = 0; j < f.size(); ++j) {
    const double a = std::abs(f[j]);
    v[j] = f[j] * std::polar(1.0, a * a * a * t);
  }
  return Field(f.grid(), std::move(v));
}

Field strang_step(const Field& f, double dt) {
  return nonlinear_flow(linear_flow(nonlinear_flow(f, 0.5 * dt), dt), 0.5 * dt);
}

namespace {

// Raw-buffer stepper: the spectral normalisation dx/L and the (-1)^s origin
// factors cancel between forward and inverse, leaving exp(-i|xi|dt)/n.
class Stepper {
 public:
  Stepper(const Grid& g, double dt) : prop_(g.n()) {
    const double scale = 1.0 / static_cast<double>(g.n());
    for (std::size_t s = 0; s < g.n(); ++s) prop_[s] = std::polar(scale, -std::abs(g.xi(s)) * dt);
    half_ = 0.5 * dt;
  }

  void step(std::vector<cplx>& u) const {
    rotate(u);
    detail::dft_forward(u);
    for (std::size_t s = 0; s < u.size(); ++s) u[s] *= prop_[s];
    detail::dft_backward(u);
    rotate(u);
  }

 private:
  void rotate(std::vector<cplx>& u) const {
    for (auto& z : u) {
      const double a = std::abs(z);
      z *= std::polar(1.0, a * a * a * half_);
    }
  }

  std::vector<cplx> prop_;
  double half_ = 0.0;
};

double relative(double now, double ref) {
  const double d = std::abs(now - ref);
  if (ref == 0.0) return d;
  return d / std::abs(ref);
}

}  // namespace

Field traveling_reference(const WaveProfile& p, double t) {
  return std::polar(1.0, p.mu * t) * apply_symbol(p.field, Translate{p.v * t});
}

EvolutionResult evolve(const Field& u0, double T, double dt, const WaveProfile* reference,
                       const EvolveOptions& opts) {
  if (!(dt > 0.0)) throw InvalidArgument("time step must be positive");
  if (!(T >= dt)) throw InvalidArgument("final time must be at least one step");
  if (opts.stride == 0) throw InvalidArgument("trace stride must be positive");
  if (reference && !(reference->field.grid() == u0.grid()))
    throw InvalidArgument("reference profile lives on a different grid");

  const Grid& g = u0.grid();
  const long steps = std::lround(T / dt);
  const double h = T / static_cast<double>(steps);
  const Stepper stepper(g, h);

  const auto n0 = integral_norms(u0);
  const double m0 = n0.mass;
  const double e0 = 0.5 * n0.h_half - 0.2 * n0.l5_fifth;
  const double qnorm = reference ? l2_norm(reference->field) : 1.0;

  EvolutionTrace trace;
  if (reference) trace.shape_error.emplace();
  auto sample = [&](double t, const Field& u) {
    const auto nn = integral_norms(u);
    const double md = relative(nn.mass, m0);
    trace.times.push_back(t);
    trace.mass_drift.push_back(md);
    trace.energy_drift.push_back(relative(0.5 * nn.h_half - 0.2 * nn.l5_fifth, e0));
    if (reference) trace.shape_error->push_back(l2_norm(u - traveling_reference(*reference, t)) / qnorm);
    if (md > opts.mass_drift_abort) {
      std::ostringstream msg;
      msg << "mass drift " << md << " exceeded " << opts.mass_drift_abort << " at t=" << t
          << " (unstable or under-resolved run)";
      throw EvolutionUnstable(msg.str());
    }
  };

  std::vector<cplx> u(u0.values().begin(), u0.values().end());
  sample(0.0, u0);
  for (long i = 1; i <= steps; ++i) {
    stepper.step(u);
    if (i % static_cast<long>(opts.stride) == 0 || i == steps) sample(h * static_cast<double>(i), Field(g, u));
  }
  return {Field(g, std::move(u)), std::move(trace)};
}

void write_trace_csv(std::ostream& os, const EvolutionTrace& trace) {
  os << "# halfwave evolution trace: t is time; mass_rel_drift is |M(t)-M(0)|/M(0) for the conserved mass;"
        " energy_rel_drift is |E(t)-E(0)|/|E(0)| for the conserved half-wave energy;"
        " shape_error is ||u(t) - e^{i(1-v)t} Q_v(x-vt)|| / ||Q_v|| (empty without a reference)\n";
  os << "t,mass_rel_drift,energy_rel_drift,shape_error\n";
  for (std::size_t i = 0; i < trace.times.size(); ++i) {
    os << format_double(trace.times[i]) << ',' << format_double(trace.mass_drift[i]) << ','
       << format_double(trace.energy_drift[i]) << ',';
    if (trace.shape_error) os << format_double((*trace.shape_error)[i]);
    os << '\n';
  }
}

}  // namespace halfwave
