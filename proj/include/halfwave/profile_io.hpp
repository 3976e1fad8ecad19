#pragma once

// Profile persistence.  Layout:
//   # halfwave traveling-wave profile ...   (free comment lines)
//   # v=<v>
//   # mu=<mu>
//   # n=<n>
//   # L=<L>
//   # residual=<residual>
//   # iterations=<iterations>
//   # converged=<0|1>
//   x,re,im
//   <x>,<re Q(x)>,<im Q(x)>
// Numbers use shortest round-trip formatting, so the round trip is lossless.

#include <filesystem>
#include <iosfwd>
#include <string>

#include "halfwave/solver.hpp"

namespace halfwave {

/// Shortest decimal text that parses back to exactly the same double.
std::string format_double(double x);
double parse_double(const std::string& text);

void write_profile_csv(std::ostream& os, const WaveProfile& p);
WaveProfile read_profile_csv(std::istream& is);

void save_profile(const std::filesystem::path& path, const WaveProfile& p);
WaveProfile load_profile(const std::filesystem::path& path);

/// "profile_v<v>.csv" with v in %g form, e.g. profile_v0.5.csv.
std::string profile_filename(double v);

}  // namespace halfwave
