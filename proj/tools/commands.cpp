#include "commands.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <ostream>

#include "halfwave/acceptance.hpp"
#include "halfwave/diagnostics.hpp"
#include "halfwave/errors.hpp"
#include "halfwave/evolution.hpp"
#include "halfwave/greenfn.hpp"
#include "halfwave/profile_io.hpp"
#include "halfwave/solver.hpp"

namespace halfwave::cli {

namespace fs = std::filesystem;
using nlohmann::json;

void ensure_writable_dir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw IoError("cannot create output directory " + dir.string() + ": " + ec.message());
  const fs::path probe = dir / ".halfwave_write_probe";
  {
    std::ofstream f(probe);
    if (!f) throw IoError("output directory " + dir.string() + " is not writable");
  }
  fs::remove(probe, ec);
}

namespace {

std::ofstream open_out(const fs::path& path) {
  std::ofstream f(path);
  if (!f) throw IoError("cannot write " + path.string());
  return f;
}

void write_json(const fs::path& path, const json& j) {
  auto f = open_out(path);
  f << j.dump(2) << '\n';
  if (!f) throw IoError("write failed for " + path.string());
}

json profile_summary(const WaveProfile& p) {
  json j{{"v", p.v},
         {"mu", p.mu},
         {"n", p.field.grid().n()},
         {"L", p.field.grid().length()},
         {"residual", p.residual_l2},
         {"iterations", p.iterations},
         {"converged", p.converged},
         {"mass", p.report.mass},
         {"h_half", p.report.h_half},
         {"l5_fifth", p.report.l5_fifth},
         {"energy", p.report.hw_energy},
         {"virial_ratio", virial_rate(p.field) / p.report.mass}};
  if (p.converged) {
    const auto poh = pohozaev_check(p);
    j["pohozaev_boosted_residual"] = poh.boosted;
    j["pohozaev_l5_fifth_residual"] = poh.l5_fifth;
  }
  return j;
}

void save_with_summary(const Context& ctx, const WaveProfile& p, json& summary) {
  const fs::path csv = ctx.out_dir / profile_filename(p.v);
  save_profile(csv, p);
  summary["profile"] = csv.string();
  fs::path meta = csv;
  meta.replace_extension(".json");
  write_json(meta, summary);
}

}  // namespace

int cmd_solve(const Context& ctx, const SolveArgs& args) {
  const RunConfig& cfg = ctx.config;
  if (cfg.speeds.size() != 1) throw InvalidArgument("solve takes a single speed");
  cfg.validate();
  const double v = cfg.speeds.front();
  SolveConfig sc = cfg.solve_config();
  Grid grid = cfg.make_grid();
  if (args.from) {
    const WaveProfile start = load_profile(*args.from);
    if (ctx.grid_from_flags && !(start.field.grid() == grid))
      throw InvalidArgument("--from profile grid differs from --n/--L");
    grid = start.field.grid();
    // Same amplitude rescaling the sweep uses between neighbouring speeds.
    sc.guess = FromProfile{std::cbrt((1.0 - v) / start.mu) * start.field};
  }
  ensure_writable_dir(ctx.out_dir);
  try {
    const WaveProfile p = solve_profile(v, grid, sc);
    json summary = profile_summary(p);
    save_with_summary(ctx, p, summary);
    ctx.out << summary.dump(2) << '\n';
    return 0;
  } catch (const NonConvergenceError& e) {
    json summary = profile_summary(e.best());
    save_with_summary(ctx, e.best(), summary);
    ctx.out << summary.dump(2) << '\n';
    throw;
  }
}

int cmd_sweep(const Context& ctx) {
  const RunConfig& cfg = ctx.config;
  cfg.validate();
  ensure_writable_dir(ctx.out_dir);
  SweepOptions opts;
  opts.continuation = cfg.solver.continuation;
  opts.threads = cfg.solver.threads;
  const auto entries = sweep(cfg.speeds, cfg.make_grid(), cfg.solve_config(), opts);

  const fs::path summary_path = ctx.out_dir / "sweep_summary.csv";
  auto csv = open_out(summary_path);
  csv << "# halfwave sweep: per-speed norms of the traveling-wave profile Q_v (dimensionless);"
         " mass = ||Q||_2^2, h_half = ||Q||_{H^1/2}^2, l5_fifth = ||Q||_5^5, energy = E_hw(Q),"
         " virial_ratio = virial rate / mass (tends to v)\n";
  csv << "v,converged,residual,mass,h_half,l5_fifth,energy,virial_ratio\n";
  std::vector<WaveProfile> good;
  json failures = json::array();
  for (const auto& e : entries) {
    if (e.profile) {
      const WaveProfile& p = *e.profile;
      save_profile(ctx.out_dir / profile_filename(p.v), p);
      csv << format_double(p.v) << ',' << (e.converged() ? 1 : 0) << ',' << format_double(p.residual_l2) << ','
          << format_double(p.report.mass) << ',' << format_double(p.report.h_half) << ','
          << format_double(p.report.l5_fifth) << ',' << format_double(p.report.hw_energy) << ','
          << format_double(virial_rate(p.field) / p.report.mass) << '\n';
    } else {
      csv << format_double(e.v) << ",0,,,,,,\n";
    }
    if (e.converged())
      good.push_back(*e.profile);
    else
      failures.push_back({{"v", e.v}, {"error", e.error}});
  }

  bool fits_pass = true;
  json fits = nullptr;
  const auto fit_count =
      std::count_if(good.begin(), good.end(), [](const WaveProfile& p) { return p.v >= 0.9; });
  if (cfg.diagnostics.scaling && fit_count >= 4) {
    const auto report = scaling_suite(good);
    fits_pass = report.all_pass();
    fits = report.to_json();
    for (const auto& e : report.entries())
      csv << "# fit " << e.name << '=' << format_double(e.value) << " pass=" << (e.pass ? 1 : 0) << '\n';
  }
  if (!csv) throw IoError("write failed for " + summary_path.string());

  json out{{"summary", summary_path.string()},
           {"converged", good.size()},
           {"requested", entries.size()},
           {"failures", failures},
           {"fits", fits},
           {"fits_pass", fits_pass}};
  ctx.out << out.dump(2) << '\n';
  return failures.empty() && fits_pass ? 0 : 1;
}

int cmd_evolve(const Context& ctx, const EvolveArgs& args) {
  const RunConfig& cfg = ctx.config;
  cfg.validate();
  const WaveProfile p = load_profile(args.profile);
  ensure_writable_dir(ctx.out_dir);
  EvolveOptions opts;
  opts.stride = cfg.evolution.stride;
  const auto res = evolve(p.field, cfg.evolution.T, cfg.evolution.dt, &p, opts);

  const fs::path path = ctx.out_dir / ("trace_v" + format_double(p.v) + ".csv");
  auto f = open_out(path);
  write_trace_csv(f, res.trace);
  if (!f) throw IoError("write failed for " + path.string());

  auto max_of = [](const std::vector<double>& v) { return *std::max_element(v.begin(), v.end()); };
  json out{{"trace", path.string()},
           {"v", p.v},
           {"T", cfg.evolution.T},
           {"dt", cfg.evolution.dt},
           {"max_mass_drift", max_of(res.trace.mass_drift)},
           {"max_energy_drift", max_of(res.trace.energy_drift)},
           {"max_shape_error", max_of(*res.trace.shape_error)}};
  ctx.out << out.dump(2) << '\n';
  return 0;
}

int cmd_green(const Context& ctx, const GreenArgs& args) {
  if (args.xs.empty() || args.ys.empty()) throw InvalidArgument("green needs at least one x and one y");
  ensure_writable_dir(ctx.out_dir);
  std::vector<GreenPoint> pts;
  json points = json::array();
  double worst = 0.0;
  for (double y : args.ys) {
    for (double x : args.xs) {
      const cplx a = green_eval(x, y, GreenMethod::FourierQuadrature);
      const cplx b = green_eval(x, y, GreenMethod::SeriesTwoTerms);
      const cplx c = green_eval(x, y, GreenMethod::ClosedPieces);
      const double scale = std::abs(c);
      const double spread = std::max({std::abs(a - b), std::abs(a - c), std::abs(b - c)}) / scale;
      worst = std::max(worst, spread);
      pts.push_back({x, y, c, GreenMethod::ClosedPieces});
      auto z = [](cplx w) { return json::array({w.real(), w.imag()}); };
      points.push_back({{"x", x},
                        {"y", y},
                        {to_string(GreenMethod::FourierQuadrature), z(a)},
                        {to_string(GreenMethod::SeriesTwoTerms), z(b)},
                        {to_string(GreenMethod::ClosedPieces), z(c)},
                        {"relative_spread", spread}});
    }
  }
  const auto bound = decay_bound_check(pts);
  const fs::path grid_path = ctx.out_dir / "green_grid.csv";
  {
    auto f = open_out(grid_path);
    write_green_csv(f, pts);
    if (!f) throw IoError("write failed for " + grid_path.string());
  }
  const bool agree = worst <= 1e-6;
  json out{{"grid", grid_path.string()},
           {"points", points},
           {"max_relative_spread", worst},
           {"methods_agree", agree},
           {"decay_bound_constant", bound.constant}};
  write_json(ctx.out_dir / "green_summary.json", out);
  ctx.out << out.dump(2) << '\n';
  return agree ? 0 : 1;
}

int cmd_check(const Context& ctx, const CheckArgs& args) {
  AcceptanceOptions opts;
  opts.criteria = parse_suite(args.suite);
  opts.seed = ctx.config.seed;
  opts.log = &ctx.out;
  ensure_writable_dir(ctx.out_dir);
  const auto results = run_acceptance(opts);
  const json report = acceptance_to_json(results);
  const fs::path path = ctx.out_dir / "acceptance_report.json";
  write_json(path, report);
  ctx.out << "report: " << path.string() << '\n';
  return report.at("all_pass").get<bool>() ? 0 : 1;
}

}  // namespace halfwave::cli
