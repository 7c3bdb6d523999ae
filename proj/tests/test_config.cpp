#include <doctest.h>

#include "pcmc/config.hpp"
#include "pcmc/table.hpp"

namespace cfg = pcmc::config;

TEST_CASE("defaults validate and mirror the reference setup") {
  cfg::ExperimentConfig c;
  CHECK_NOTHROW(c.validate());
  CHECK(c.r0 == 10.0);
  CHECK(c.rr == 5.0);
  CHECK(c.D == 80.0);
  CHECK(c.t_s == 0.15);
  CHECK(c.geometry().gamma() == 0.5);
  CHECK(c.alphas_rad().size() == 3);
  CHECK(c.cdf_times().size() == 20);
  CHECK(c.cdf_times().back() == 10.0);
}

TEST_CASE("parse reads sections, comments and lists") {
  const auto c = cfg::parse(R"(
# comment line
[geometry]
r0 = 12.0   ; trailing comment
rr = 4
D = 100
[region]
alpha_deg = 30, 60, 90
[timing]
t_s = 0.2
[link]
n1 = 250
threshold = auto
[output]
format = json
)");
  CHECK(c.r0 == 12.0);
  CHECK(c.rr == 4.0);
  CHECK(c.D == 100.0);
  CHECK(c.alphas_deg == std::vector<double>{30.0, 60.0, 90.0});
  CHECK(c.t_s == 0.2);
  CHECK(c.n1 == 250);
  CHECK(c.threshold == -1);
  CHECK(c.format == "json");
  CHECK(c.dt == 1e-4);  // untouched default
}

TEST_CASE("alpha grid range sugar expands inclusively") {
  const auto c = cfg::parse("[region]\nalpha_grid_deg = 10:50:10\n");
  CHECK(c.alphas_deg == std::vector<double>{10.0, 20.0, 30.0, 40.0, 50.0});
}

TEST_CASE("unknown keys are rejected with the field path") {
  CHECK_THROWS_WITH_AS(cfg::parse("[geometry]\nradius = 5\n"),
                       "unknown key: geometry.radius", cfg::ConfigError);
  CHECK_THROWS_AS(cfg::parse("[shape]\nr0 = 5\n"), cfg::ConfigError);
}

TEST_CASE("malformed input produces diagnostics") {
  CHECK_THROWS_AS(cfg::parse("r0 = 5\n"), cfg::ConfigError);        // no section
  CHECK_THROWS_AS(cfg::parse("[geometry\nr0 = 5\n"), cfg::ConfigError);
  CHECK_THROWS_AS(cfg::parse("[geometry]\nr0\n"), cfg::ConfigError);
  CHECK_THROWS_AS(cfg::parse("[geometry]\nr0 = abc\n"), cfg::ConfigError);
  CHECK_THROWS_AS(cfg::parse("[link]\nn1 = -3\n"), cfg::ConfigError);
}

TEST_CASE("validation reports the offending field") {
  CHECK_THROWS_WITH_AS(cfg::parse("[geometry]\nr0 = 3\n"),
                       "geometry.r0/geometry.rr: need r0 > rr > 0",
                       cfg::ConfigError);
  CHECK_THROWS_AS(cfg::parse("[timing]\nt_s = -0.1\n"), cfg::ConfigError);
  CHECK_THROWS_AS(cfg::parse("[link]\nprior1 = 1.5\n"), cfg::ConfigError);
  CHECK_THROWS_AS(cfg::parse("[output]\nformat = yaml\n"), cfg::ConfigError);
}

TEST_CASE("parse then serialize then parse is the identity") {
  const auto c1 = cfg::parse(
      "[geometry]\nr0 = 11\nrr = 4.5\nD = 79.5\n"
      "[region]\nalpha_deg = 25, 45\n"
      "[timing]\nt_s = 0.12\ntimes = 0.5, 1, 2\n"
      "[simulation]\nn_molecules = 5000\nseed = 9\n"
      "[link]\nn1 = 120\nm_grid = 100, 200\n"
      "[output]\nformat = json\npath = out.json\n");
  const auto c2 = cfg::parse(c1.serialize());
  CHECK(c2.serialize() == c1.serialize());
  CHECK(c2.r0 == c1.r0);
  CHECK(c2.alphas_deg == c1.alphas_deg);
  CHECK(c2.times == c1.times);
  CHECK(c2.m_grid == c1.m_grid);
  CHECK(c2.seed == c1.seed);
  CHECK(c2.path == c1.path);
}

TEST_CASE("load_file reports missing files as config errors") {
  CHECK_THROWS_AS(cfg::load_file("/nonexistent/path.ini"), cfg::ConfigError);
}

TEST_CASE("table emits deterministic CSV and JSON") {
  pcmc::table::Table t{{"a", "b", "s"}, {}};
  t.add_row({1.5, static_cast<long long>(7), std::string("x")});
  t.add_row({pcmc::table::Cell{}, 0.25, std::string("y")});
  CHECK(t.to_csv() == "a,b,s\n1.5,7,x\n,0.25,y\n");
  const std::string j = t.to_json();
  CHECK(j.find("\"a\": 1.5") != std::string::npos);
  CHECK(j.find("\"a\": null") != std::string::npos);
  CHECK_THROWS(t.add_row({1.0}));
}

TEST_CASE("format_number is stable at 10 significant digits") {
  CHECK(pcmc::table::format_number(0.1) == "0.1");
  CHECK(pcmc::table::format_number(1.0 / 3.0) == "0.3333333333");
  CHECK(pcmc::table::format_number(12345678.9) == "12345678.9");
}
