#include "halfwave/run_config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "halfwave/errors.hpp"
#include "halfwave/profile_io.hpp"

namespace halfwave {

void RunConfig::validate() const {
  static_cast<void>(make_grid());
  solve_config().validate();
  if (speeds.empty()) throw InvalidArgument("empty speed list");
  for (double v : speeds)
    if (!(v > 0.0 && v < 1.0)) throw InvalidArgument("v out of range (0,1): " + format_double(v));
  if (!(evolution.T > 0.0) || !(evolution.dt > 0.0) || evolution.dt > evolution.T)
    throw InvalidArgument("evolution needs 0 < dt <= T");
  if (evolution.stride == 0) throw InvalidArgument("evolution stride must be positive");
  if (solver.threads == 0) throw InvalidArgument("thread count must be positive");
}

SolveConfig RunConfig::solve_config() const {
  SolveConfig s;
  s.gamma = solver.gamma;
  s.tol_residual = solver.tol_residual;
  s.tol_increment = solver.tol_increment;
  s.max_iter = solver.max_iter;
  s.guess = GaussianPacket{solver.packet_width, std::nullopt};
  s.gauge = solver.gauge ? Gauge::PhasePeakReal : Gauge::None;
  return s;
}

Grid RunConfig::make_grid() const { return Grid(grid.n, grid.length); }

namespace {

using nlohmann::json;

void reject_unknown(const json& j, std::initializer_list<const char*> keys, const std::string& where) {
  if (!j.is_object()) throw InvalidArgument("config section '" + where + "' must be an object");
  std::set<std::string> allowed(keys.begin(), keys.end());
  for (const auto& [k, _] : j.items())
    if (!allowed.count(k)) throw InvalidArgument("unknown config key '" + where + k + "'");
}

template <class T>
void read(const json& j, const char* key, T& out) {
  if (auto it = j.find(key); it != j.end()) out = it->template get<T>();
}

}  // namespace

nlohmann::json to_json(const RunConfig& c) {
  return json{
      {"grid", {{"n", c.grid.n}, {"L", c.grid.length}}},
      {"solver",
       {{"gamma", c.solver.gamma},
        {"tol_residual", c.solver.tol_residual},
        {"tol_increment", c.solver.tol_increment},
        {"max_iter", c.solver.max_iter},
        {"packet_width", c.solver.packet_width},
        {"gauge", c.solver.gauge},
        {"continuation", c.solver.continuation},
        {"threads", c.solver.threads}}},
      {"speeds", c.speeds},
      {"evolution", {{"T", c.evolution.T}, {"dt", c.evolution.dt}, {"stride", c.evolution.stride}}},
      {"diagnostics",
       {{"pohozaev", c.diagnostics.pohozaev},
        {"virial", c.diagnostics.virial},
        {"scaling", c.diagnostics.scaling},
        {"decay", c.diagnostics.decay}}},
      {"output_dir", c.output_dir},
      {"seed", c.seed},
  };
}

RunConfig run_config_from_json(const nlohmann::json& j) {
  RunConfig c;
  try {
    reject_unknown(j, {"grid", "solver", "speeds", "evolution", "diagnostics", "output_dir", "seed"}, "");
    if (auto g = j.find("grid"); g != j.end()) {
      reject_unknown(*g, {"n", "L"}, "grid.");
      read(*g, "n", c.grid.n);
      read(*g, "L", c.grid.length);
    }
    if (auto s = j.find("solver"); s != j.end()) {
      reject_unknown(*s, {"gamma", "tol_residual", "tol_increment", "max_iter", "packet_width", "gauge",
                          "continuation", "threads"},
                     "solver.");
      read(*s, "gamma", c.solver.gamma);
      read(*s, "tol_residual", c.solver.tol_residual);
      read(*s, "tol_increment", c.solver.tol_increment);
      read(*s, "max_iter", c.solver.max_iter);
      read(*s, "packet_width", c.solver.packet_width);
      read(*s, "gauge", c.solver.gauge);
      read(*s, "continuation", c.solver.continuation);
      read(*s, "threads", c.solver.threads);
    }
    read(j, "speeds", c.speeds);
    if (auto e = j.find("evolution"); e != j.end()) {
      reject_unknown(*e, {"T", "dt", "stride"}, "evolution.");
      read(*e, "T", c.evolution.T);
      read(*e, "dt", c.evolution.dt);
      read(*e, "stride", c.evolution.stride);
    }
    if (auto d = j.find("diagnostics"); d != j.end()) {
      reject_unknown(*d, {"pohozaev", "virial", "scaling", "decay"}, "diagnostics.");
      read(*d, "pohozaev", c.diagnostics.pohozaev);
      read(*d, "virial", c.diagnostics.virial);
      read(*d, "scaling", c.diagnostics.scaling);
      read(*d, "decay", c.diagnostics.decay);
    }
    read(j, "output_dir", c.output_dir);
    read(j, "seed", c.seed);
  } catch (const nlohmann::json::exception& e) {
    throw InvalidArgument(std::string("malformed config: ") + e.what());
  }
  return c;
}

RunConfig load_run_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config " + path.string());
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw InvalidArgument("config " + path.string() + " is not valid JSON: " + e.what());
  }
  return run_config_from_json(j);
}

void save_run_config(const RunConfig& c, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write config " + path.string());
  out << to_json(c).dump(2) << '\n';
  if (!out) throw IoError("write failed for " + path.string());
}

std::vector<double> parse_value_list(const std::string& text) {
  std::vector<double> out;
  auto number = [&](const std::string& s) {
    try {
      return parse_double(s);
    } catch (const std::exception&) {
      throw InvalidArgument("bad number '" + s + "'");
    }
  };
  if (text.find(':') != std::string::npos) {
    std::vector<std::string> parts;
    std::stringstream ss(text);
    for (std::string p; std::getline(ss, p, ':');) parts.push_back(p);
    if (parts.size() != 3) throw InvalidArgument("range must be a:b:step");
    const double a = number(parts[0]), b = number(parts[1]), step = number(parts[2]);
    if (!(step > 0.0) || b < a) throw InvalidArgument("range needs a <= b and step > 0");
    const long count = std::lround((b - a) / step);
    // Points are formed as integer / 10^d so 0.90:0.99:0.01 yields exactly 0.91.
    int d = 0;
    double scale = 1.0;
    while (d < 12 && (std::abs(step * scale - std::round(step * scale)) > 1e-9 * step * scale ||
                      std::abs(a * scale - std::round(a * scale)) > 1e-9 * std::max(1.0, a * scale))) {
      ++d;
      scale *= 10.0;
    }
    const double a_int = std::round(a * scale), step_int = std::round(step * scale);
    for (long i = 0; i <= count; ++i) out.push_back((a_int + static_cast<double>(i) * step_int) / scale);
  } else {
    std::stringstream ss(text);
    for (std::string p; std::getline(ss, p, ',');) out.push_back(number(p));
  }
  if (out.empty()) throw InvalidArgument("empty speed list");
  return out;
}

}  // namespace halfwave
