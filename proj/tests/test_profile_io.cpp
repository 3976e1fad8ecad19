#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "halfwave/errors.hpp"
#include "halfwave/profile_io.hpp"
#include "test_util.hpp"

using namespace halfwave;

TEST_SUITE("profile_io") {
  TEST_CASE("lossless round trip") {
    const WaveProfile& p = testutil::profile(0.5);
    std::stringstream ss;
    write_profile_csv(ss, p);
    const WaveProfile q = read_profile_csv(ss);
    CHECK(q.v == p.v);
    CHECK(q.mu == p.mu);
    CHECK(q.residual_l2 == p.residual_l2);
    CHECK(q.iterations == p.iterations);
    CHECK(q.converged == p.converged);
    CHECK(q.field.grid() == p.field.grid());
    CHECK(std::equal(q.field.values().begin(), q.field.values().end(), p.field.values().begin()));
    CHECK(q.report.mass == p.report.mass);
  }

  TEST_CASE("header names the quantity") {
    std::stringstream ss;
    write_profile_csv(ss, testutil::profile(0.5));
    std::string first;
    std::getline(ss, first);
    CHECK(first.rfind("#", 0) == 0);
    const std::string all = ss.str();
    for (const char* key : {"# v=", "# mu=", "# n=", "# L=", "# residual=", "\nx,re,im\n"})
      CHECK(all.find(key) != std::string::npos);
  }

  TEST_CASE("doubles survive text") {
    for (double x : {0.1, 1.0 / 3.0, -2.5e-300, 6.02214076e23, 0.0})
      CHECK(parse_double(format_double(x)) == x);
    CHECK_THROWS(parse_double("1.0abc"));
  }

  TEST_CASE("malformed input") {
    std::stringstream missing("# v=0.5\nx,re,im\n0,1,0\n");
    CHECK_THROWS_AS(read_profile_csv(missing), IoError);
    std::stringstream garbage("not a profile");
    CHECK_THROWS_AS(read_profile_csv(garbage), IoError);
    CHECK_THROWS_AS(load_profile("/nonexistent/profile.csv"), IoError);
  }

  TEST_CASE("file names") {
    CHECK(profile_filename(0.5) == "profile_v0.5.csv");
    CHECK(profile_filename(0.98) == "profile_v0.98.csv");
    const auto dir = std::filesystem::temp_directory_path() / "halfwave_io_test";
    std::filesystem::create_directories(dir);
    const auto path = dir / profile_filename(0.5);
    save_profile(path, testutil::profile(0.5));
    const WaveProfile q = load_profile(path);
    CHECK(q.field.grid() == testutil::profile(0.5).field.grid());
    std::filesystem::remove_all(dir);
  }
}
