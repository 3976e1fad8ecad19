#include "halfwave/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <ostream>

#include "halfwave/errors.hpp"
#include "halfwave/functionals.hpp"
#include "halfwave/profile_io.hpp"

namespace halfwave {

ReportEntry& DiagnosticsReport::push(ReportEntry e) {
  e.pass = e.evaluate();
  entries_.push_back(std::move(e));
  return entries_.back();
}

ReportEntry& DiagnosticsReport::add_near(std::string name, double value, double target, double tolerance,
                                         std::string note) {
  return push({std::move(name), value, target, target, tolerance, false, std::move(note)});
}

ReportEntry& DiagnosticsReport::add_interval(std::string name, double value, double lo, double hi,
                                             std::string note) {
  return push({std::move(name), value, lo, hi, 0.0, false, std::move(note)});
}

ReportEntry& DiagnosticsReport::add_at_most(std::string name, double value, double bound, std::string note) {
  return push({std::move(name), value, -std::numeric_limits<double>::infinity(), bound, 0.0, false,
               std::move(note)});
}

ReportEntry& DiagnosticsReport::add_at_least(std::string name, double value, double bound, std::string note) {
  return push({std::move(name), value, bound, std::numeric_limits<double>::infinity(), 0.0, false,
               std::move(note)});
}

ReportEntry& DiagnosticsReport::add_record(std::string name, double value, std::string note) {
  return push({std::move(name), value, -std::numeric_limits<double>::infinity(),
               std::numeric_limits<double>::infinity(), 0.0, false, std::move(note)});
}

void DiagnosticsReport::append(const DiagnosticsReport& other, const std::string& prefix) {
  for (ReportEntry e : other.entries_) {
    e.name = prefix + e.name;
    entries_.push_back(std::move(e));
  }
}

bool DiagnosticsReport::all_pass() const {
  return std::all_of(entries_.begin(), entries_.end(), [](const ReportEntry& e) { return e.pass; });
}

const ReportEntry* DiagnosticsReport::find(const std::string& name) const {
  for (const auto& e : entries_)
    if (e.name == name) return &e;
  return nullptr;
}

namespace {

nlohmann::json number_or_null(double x) {
  if (std::isfinite(x)) return x;
  return nullptr;
}

double number_from(const nlohmann::json& j, double fallback) {
  return j.is_null() ? fallback : j.get<double>();
}

}  // namespace

nlohmann::json DiagnosticsReport::to_json() const {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& e : entries_) {
    arr.push_back({{"name", e.name},
                   {"value", number_or_null(e.value)},
                   {"target", {{"lo", number_or_null(e.lo)}, {"hi", number_or_null(e.hi)}}},
                   {"tolerance", e.tolerance},
                   {"pass", e.pass},
                   {"note", e.note}});
  }
  return {{"entries", arr}, {"pass", all_pass()}};
}

DiagnosticsReport DiagnosticsReport::from_json(const nlohmann::json& j) {
  constexpr double inf = std::numeric_limits<double>::infinity();
  DiagnosticsReport r;
  for (const auto& e : j.at("entries")) {
    ReportEntry entry;
    entry.name = e.at("name").get<std::string>();
    entry.value = number_from(e.at("value"), std::numeric_limits<double>::quiet_NaN());
    entry.lo = number_from(e.at("target").at("lo"), -inf);
    entry.hi = number_from(e.at("target").at("hi"), inf);
    entry.tolerance = e.at("tolerance").get<double>();
    entry.pass = e.at("pass").get<bool>();
    entry.note = e.value("note", "");
    r.entries_.push_back(std::move(entry));
  }
  return r;
}

void DiagnosticsReport::write_csv(std::ostream& os) const {
  os << "name,value,lo,hi,tolerance,pass,note\n";
  for (const auto& e : entries_) {
    std::string note = e.note;
    std::replace(note.begin(), note.end(), ',', ';');
    os << e.name << ',' << format_double(e.value) << ',' << format_double(e.lo) << ',' << format_double(e.hi)
       << ',' << format_double(e.tolerance) << ',' << (e.pass ? 1 : 0) << ',' << note << '\n';
  }
}

PohozaevResiduals pohozaev_check(const WaveProfile& p) {
  if (!p.converged) throw InvalidArgument("Pohozaev check needs a converged profile");
  const auto n = integral_norms(p.field);
  const double b = n.h_half + p.v * n.momentum_term;
  const double tb = 1.5 * p.mu * n.mass;
  const double t5 = 2.5 * p.mu * n.mass;
  return {std::abs(b - tb) / tb, std::abs(n.l5_fifth - t5) / t5};
}

PowerLawFit power_law_fit(std::span<const double> xs, std::span<const double> ys) {
  if (xs.size() != ys.size()) throw InvalidArgument("power-law fit needs matching x and y");
  if (xs.size() < 3) throw InvalidArgument("insufficient data: power-law fit needs at least 3 points");
  const std::size_t m = xs.size();
  double sx = 0.0, sy = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    if (!(xs[i] > 0.0) || !(ys[i] > 0.0)) throw InvalidArgument("power-law fit needs positive data");
    sx += std::log(xs[i]);
    sy += std::log(ys[i]);
  }
  const double mx = sx / m, my = sy / m;
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    const double dx = std::log(xs[i]) - mx;
    sxx += dx * dx;
    sxy += dx * (std::log(ys[i]) - my);
  }
  if (sxx == 0.0) throw InvalidArgument("power-law fit needs distinct x values");
  const double slope = sxy / sxx;
  const double intercept = my - slope * mx;
  double worst = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    const double model = std::exp(intercept + slope * std::log(xs[i]));
    worst = std::max(worst, std::abs(model - ys[i]) / ys[i]);
  }
  return {slope, std::exp(intercept), worst};
}

DiagnosticsReport scaling_suite(std::span<const WaveProfile> profiles) {
  std::vector<double> gap, l2, l5, hh, h1, cw;
  for (const auto& p : profiles) {
    if (!p.converged || p.v < 0.9) continue;
    const auto n = integral_norms(p.field);
    gap.push_back(1.0 - p.v);
    l2.push_back(std::sqrt(n.mass));
    l5.push_back(n.l5_fifth);
    hh.push_back(std::sqrt(n.mass + n.h_half));
    h1.push_back(std::sqrt(n.mass + h1_seminorm_sq(p.field)));
    cw.push_back(weinstein(p.field, p.v) * std::pow(1.0 - p.v, 1.5));
  }
  if (gap.size() < 4) throw InvalidArgument("scaling suite needs at least 4 converged profiles with v >= 0.9");

  DiagnosticsReport r;
  const auto fl2 = power_law_fit(gap, l2);
  r.add_interval("l2_exponent", fl2.exponent, 0.30, 0.36, "||Q_v||_2 ~ (1-v)^{1/3}");
  const auto fl5 = power_law_fit(gap, l5);
  r.add_interval("l5_fifth_exponent", fl5.exponent, 1.55, 1.78, "||Q_v||_5^5 = O((1-v)^{5/3})");
  const auto fhh = power_law_fit(gap, hh);
  r.add_record("h_half_exponent", fhh.exponent, "fitted slope of ||Q_v||_{H^1/2}");
  const auto fh1 = power_law_fit(gap, h1);
  r.add_record("h1_exponent", fh1.exponent, "fitted slope of ||Q_v||_{H^1}");

  // ||Q|| <= C (1-v)^{1/3}: C is the largest ratio, and the ratio must not drift.
  auto ratio_range = [&](const std::vector<double>& q) {
    double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
    for (std::size_t i = 0; i < q.size(); ++i) {
      const double c = q[i] / std::cbrt(gap[i]);
      lo = std::min(lo, c);
      hi = std::max(hi, c);
    }
    return std::pair{hi, hi / lo};
  };
  const auto [chh, shh] = ratio_range(hh);
  const auto [ch1, sh1] = ratio_range(h1);
  r.add_record("h_half_constant", chh, "sup ||Q_v||_{H^1/2} / (1-v)^{1/3} over the sweep");
  r.add_at_most("h_half_ratio_spread", shh, 2.0, "max/min of ||Q_v||_{H^1/2} / (1-v)^{1/3}");
  r.add_record("h1_constant", ch1, "sup ||Q_v||_{H^1} / (1-v)^{1/3} over the sweep");
  r.add_at_most("h1_ratio_spread", sh1, 2.0, "max/min of ||Q_v||_{H^1} / (1-v)^{1/3}");
  const auto [cmin, cmax] = std::minmax_element(cw.begin(), cw.end());
  r.add_at_most("weinstein_scaled_spread", *cmax / *cmin, 2.0, "C_v (1-v)^{3/2} stays bounded above and below");
  return r;
}

namespace {

double rms_width(const Field& f, double centre) {
  const Grid& g = f.grid();
  double m = 0.0, s2 = 0.0;
  for (std::size_t j = 0; j < f.size(); ++j) {
    const double a2 = std::norm(f[j]);
    const double d = g.x(j) - centre;
    m += a2;
    s2 += d * d * a2;
  }
  return m > 0.0 ? std::sqrt(s2 / m) : 0.0;
}

}  // namespace

PowerLawFit decay_fit(const Field& f, double x_lo, double x_hi) {
  const Grid& g = f.grid();
  if (!(x_lo < x_hi)) throw InvalidArgument("decay window must have x_lo < x_hi");
  if (x_lo < 0.0 && x_hi > 0.0) throw InvalidArgument("decay window straddles the origin");
  const double near = std::min(std::abs(x_lo), std::abs(x_hi));
  const double far = std::max(std::abs(x_lo), std::abs(x_hi));
  const double edge = 0.5 * g.length() - 0.05 * g.length();
  if (far > edge) throw InvalidArgument("decay window reaches the box edge (L/2 minus 5% margin)");

  const double peak = peak_position(f);
  const double core = std::abs(peak) + 3.0 * rms_width(f, peak);
  if (near < core) throw InvalidArgument("decay window overlaps the core of the profile");

  std::vector<double> xs, ys;
  for (std::size_t j = 0; j < f.size(); ++j) {
    const double x = g.x(j);
    if (x < x_lo || x > x_hi) continue;
    const double a = std::abs(f[j]);
    if (!(a > 1e-12)) throw InvalidArgument("profile falls below 1e-12 inside the decay window");
    xs.push_back(std::abs(x));
    ys.push_back(a);
  }
  return power_law_fit(xs, ys);
}

PowerLawFit decay_fit(const WaveProfile& p, double x_lo, double x_hi) { return decay_fit(p.field, x_lo, x_hi); }

FrequencySplit frequency_mass_split(const Field& f) {
  const Spectrum sp = to_spectrum(f);
  const Grid& g = f.grid();
  double pos = 0.0, neg = 0.0, zero = 0.0;
  for (std::size_t s = 0; s < g.n(); ++s) {
    const long k = g.k(s);
    const double w = std::norm(sp[s]);
    (k > 0 ? pos : (k < 0 ? neg : zero)) += w;
  }
  const double total = pos + neg + zero;
  if (total == 0.0) throw InvalidArgument("frequency split of the zero field");
  return {pos / total, neg / total, zero / total};
}

double virial_rate(const Field& f) {
  const Spectrum sp = to_spectrum(f);
  const Grid& g = f.grid();
  double acc = 0.0;
  for (std::size_t s = 0; s < g.n(); ++s) {
    const double xo = g.xi_odd(s);
    acc += ((xo > 0.0) - (xo < 0.0)) * std::norm(sp[s]);
  }
  return acc / g.length();
}

SpeedOfLightResidual speed_of_light_residual(const Field& f, double mu) {
  const Grid& g = f.grid();
  const Spectrum sp = to_spectrum(f);
  std::vector<cplx> c(sp.coeffs().begin(), sp.coeffs().end());
  for (std::size_t s = 0; s < g.n(); ++s)
    if (g.k(s) > 0) c[s] = 0.0;
  const Spectrum proj_spec(g, std::move(c));
  const Field proj = to_field(proj_spec);
  const double norm = l2_norm(proj);
  if (norm <= 1e-12 * l2_norm(f)) throw InvalidArgument("zero projection onto nonpositive frequencies");

  const Field deriv = to_field(apply_symbol(proj_spec, Derivative{}));
  std::vector<cplx> ode(g.n()), dens(g.n());
  for (std::size_t j = 0; j < g.n(); ++j) {
    const double a = std::abs(proj[j]);
    ode[j] = -2.0 * deriv[j] + cplx(0.0, mu) * proj[j] - cplx(0.0, a * a * a) * proj[j];
    dens[j] = a * a;
  }
  const double r_ode = l2_norm(Field(g, std::move(ode))) / norm;
  const Field ddens = apply_symbol(Field(g, std::move(dens)), Derivative{});
  const double flat = l2_norm(ddens) * g.length() / (norm * norm);
  return {r_ode, flat};
}

cplx overlap(const Field& f, const Field& g, double shift) {
  if (!(f.grid() == g.grid())) throw InvalidArgument("overlap of fields on different grids");
  return inner(f, apply_symbol(g, Translate{shift}));
}

ContinuityResult profile_continuity(const WaveProfile& p1, const WaveProfile& p2) {
  const bool identical = p1.v == p2.v && p1.field.grid() == p2.field.grid() &&
                         std::equal(p1.field.values().begin(), p1.field.values().end(), p2.field.values().begin());
  if (identical) return {0.0, 1.0 - p1.v <= 0.1};
  if (!(p1.v < p2.v)) throw InvalidArgument("continuity needs p1.v < p2.v");
  if (!p1.converged || !p2.converged) throw InvalidArgument("continuity needs converged profiles");
  if (!(p1.field.grid() == p2.field.grid())) throw InvalidArgument("continuity needs a shared grid");
  for (const WaveProfile* p : {&p1, &p2}) {
    const cplx q0 = p->field[p->field.grid().origin_index()];
    if (std::abs(std::arg(q0)) > 1e-6 || std::abs(peak_position(p->field)) > 1e-6)
      throw InvalidArgument("gauge mismatch: profiles are not phase/peak aligned");
  }
  const double delta = p2.v - p1.v;
  const double eps = 1.0 - p1.v;
  const double diff = l2_norm(p1.field - p2.field);
  const bool regime = eps <= 0.1 && delta <= 0.1 * eps;
  if (diff == 0.0) return {0.0, regime};
  return {diff / (delta * std::cbrt(eps)), regime};
}

Field rescale_standing_wave(const Field& q, double lambda) {
  if (!(lambda > 0.0)) throw InvalidArgument("rescaling needs lambda > 0");
  const Grid g(static_cast<long>(q.grid().n()), q.grid().length() / lambda);
  const double amp = std::cbrt(lambda);
  std::vector<cplx> v(q.values().begin(), q.values().end());
  for (auto& z : v) z *= amp;
  return Field(g, std::move(v));
}

EnergyComparison ground_state_energy_compare(const WaveProfile& p, const WaveProfile& gs) {
  const auto nw = integral_norms(p.field);
  const auto ng = integral_norms(gs.field);
  if (!(nw.mass > 0.0) || !(ng.mass > 0.0)) throw InvalidArgument("mass matching impossible for a zero field");
  // M(lambda) = lambda^{-1/3} M0.
  const double lambda = std::pow(ng.mass / nw.mass, 3.0);
  const Field scaled = rescale_standing_wave(gs.field, lambda);
  return {0.5 * nw.h_half - 0.2 * nw.l5_fifth, hw_energy(scaled), lambda, nw.mass, integral_norms(scaled).mass};
}

double commutator_residual(const Field& f) {
  const Grid& g = f.grid();
  double peak = 0.0, tail = 0.0;
  const double band = 0.45 * g.length();
  for (std::size_t j = 0; j < f.size(); ++j) {
    const double a = std::abs(f[j]);
    peak = std::max(peak, a);
    if (std::abs(g.x(j)) >= band) tail = std::max(tail, a);
  }
  if (peak == 0.0) return 0.0;
  if (tail > 1e-12 * peak) throw InvalidArgument("tail too large for the commutator check");

  const Field df = apply_symbol(f, SqrtLaplacian{});
  std::vector<cplx> xf(f.size()), xdf(f.size());
  for (std::size_t j = 0; j < f.size(); ++j) {
    xf[j] = g.x(j) * f[j];
    xdf[j] = g.x(j) * df[j];
  }
  const Field dxf = apply_symbol(Field(g, std::move(xf)), SqrtLaplacian{});
  const Field hf = apply_symbol(f, Hilbert{});
  const Field res = Field(g, std::move(xdf)) - dxf + (1.0 / std::numbers::pi) * hf;
  return l2_norm(res) / l2_norm(f);
}

}  // namespace halfwave
