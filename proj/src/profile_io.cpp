#include "halfwave/profile_io.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

#include "halfwave/errors.hpp"

namespace halfwave {

std::string format_double(double x) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

double parse_double(const std::string& text) {
  std::size_t start = text.find_first_not_of(" \t");
  std::size_t stop = text.find_last_not_of(" \t\r");
  if (start == std::string::npos) throw IoError("empty number");
  double out = 0.0;
  const char* first = text.data() + start;
  const char* last = text.data() + stop + 1;
  const auto res = std::from_chars(first, last, out);
  if (res.ec != std::errc() || res.ptr != last) throw IoError("malformed number '" + text + "'");
  return out;
}

void write_profile_csv(std::ostream& os, const WaveProfile& p) {
  const Grid& g = p.field.grid();
  os << "# halfwave traveling-wave profile Q_v(x), solution of |D|Q + i v Q' + (1-v) Q = |Q|^3 Q;"
        " x is dimensionless position, re/im are the real and imaginary parts of Q_v(x)\n";
  os << "# v=" << format_double(p.v) << "\n";
  os << "# mu=" << format_double(p.mu) << "\n";
  os << "# n=" << g.n() << "\n";
  os << "# L=" << format_double(g.length()) << "\n";
  os << "# residual=" << format_double(p.residual_l2) << "\n";
  os << "# iterations=" << p.iterations << "\n";
  os << "# converged=" << (p.converged ? 1 : 0) << "\n";
  os << "x,re,im\n";
  for (std::size_t j = 0; j < g.n(); ++j)
    os << format_double(g.x(j)) << ',' << format_double(p.field[j].real()) << ','
       << format_double(p.field[j].imag()) << '\n';
}

WaveProfile read_profile_csv(std::istream& is) {
  std::map<std::string, std::string> meta;
  std::string line;
  bool header_seen = false;
  std::vector<cplx> values;
  while (std::getline(is, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line[0] == '#') {
      const auto eq = line.find('=');
      if (eq != std::string::npos) {
        std::string key = line.substr(1, eq - 1);
        key.erase(0, key.find_first_not_of(' '));
        key.erase(key.find_last_not_of(' ') + 1);
        if (key.find(' ') == std::string::npos) meta[key] = line.substr(eq + 1);
      }
      continue;
    }
    if (!header_seen) {
      if (line.rfind("x,re,im", 0) != 0) throw IoError("profile CSV lacks the x,re,im header");
      header_seen = true;
      continue;
    }
    const auto c1 = line.find(',');
    const auto c2 = line.find(',', c1 + 1);
    if (c1 == std::string::npos || c2 == std::string::npos) throw IoError("malformed profile row: " + line);
    values.emplace_back(parse_double(line.substr(c1 + 1, c2 - c1 - 1)), parse_double(line.substr(c2 + 1)));
  }
  for (const char* key : {"v", "n", "L"})
    if (!meta.count(key)) throw IoError(std::string("profile CSV lacks metadata '") + key + "'");

  const double v = parse_double(meta["v"]);
  const long n = static_cast<long>(parse_double(meta["n"]));
  const double length = parse_double(meta["L"]);
  Grid grid = [&] {
    try {
      return Grid(n, length);
    } catch (const InvalidArgument& e) {
      throw IoError(std::string("profile CSV has an invalid grid: ") + e.what());
    }
  }();
  if (values.size() != grid.n()) throw IoError("profile CSV row count does not match n");

  Field field(grid, std::move(values));
  const double mu = meta.count("mu") ? parse_double(meta["mu"]) : 1.0 - v;
  WaveProfile p{v, mu, field, 0.0, 0, false, functional_report(field, v, mu)};
  p.residual_l2 = meta.count("residual") ? parse_double(meta["residual"]) : profile_residual(field, v, mu);
  p.iterations = meta.count("iterations") ? static_cast<int>(parse_double(meta["iterations"])) : 0;
  p.converged = meta.count("converged") && meta["converged"] == "1";
  return p;
}

void save_profile(const std::filesystem::path& path, const WaveProfile& p) {
  std::ofstream os(path);
  if (!os) throw IoError("cannot open '" + path.string() + "' for writing");
  write_profile_csv(os, p);
  if (!os) throw IoError("write to '" + path.string() + "' failed");
}

WaveProfile load_profile(const std::filesystem::path& path) {
  std::ifstream is(path);
  if (!is) throw IoError("cannot open '" + path.string() + "'");
  return read_profile_csv(is);
}

std::string profile_filename(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "profile_v%g.csv", v);
  return buf;
}

}  // namespace halfwave
