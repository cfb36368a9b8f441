// test_config.cpp -- config schema: defaults, parsing diagnostics, exact
// round-tripping, and scenario assembly.
#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>
#include <string>

#include "doctest.h"
#include "uwauth/analytic.hpp"
#include "uwauth/config.hpp"
#include "uwauth/errors.hpp"

using namespace uwauth;

namespace {

bool same_config(const ExperimentConfig& a, const ExperimentConfig& b) {
  if (a.channel.freq_khz != b.channel.freq_khz) return false;
  if (a.channel.spreading != b.channel.spreading) return false;
  if (a.channel.sound_speed != b.channel.sound_speed) return false;
  if (a.channel.tx_power != b.channel.tx_power) return false;
  if (a.channel.link_quality_db != b.channel.link_quality_db) return false;
  if (a.channel.processing_gain != b.channel.processing_gain) return false;
  if (a.channel.sigma_scale != b.channel.sigma_scale) return false;
  if (a.anchors.size() != b.anchors.size()) return false;
  for (std::size_t i = 0; i < a.anchors.size(); ++i)
    if (a.anchors[i].x != b.anchors[i].x || a.anchors[i].y != b.anchors[i].y)
      return false;
  if (a.num_anchors != b.num_anchors) return false;
  if (a.legitimate.x != b.legitimate.x || a.legitimate.y != b.legitimate.y)
    return false;
  if (a.attacker.kind != b.attacker.kind) return false;
  if (a.attacker.point.x != b.attacker.point.x) return false;
  if (a.attacker.point.y != b.attacker.point.y) return false;
  if (a.attacker.extent != b.attacker.extent) return false;
  if (a.attacker.radius != b.attacker.radius) return false;
  if (a.threshold != b.threshold) return false;
  if (a.trials != b.trials) return false;
  if (a.seed != b.seed) return false;
  if (a.threads != b.threads) return false;
  if (a.mode != b.mode) return false;
  if (a.figure != b.figure) return false;
  if (a.out != b.out) return false;
  if (a.format != b.format) return false;
  if (a.gnuplot != b.gnuplot) return false;
  if (a.sweep_axis != b.sweep_axis) return false;
  if (a.sweep_values != b.sweep_values) return false;
  if (a.threshold_grid != b.threshold_grid) return false;
  return true;
}

}  // namespace

TEST_CASE("defaults reproduce the reference evaluation setup") {
  const ExperimentConfig c = default_config();
  CHECK(c.channel.freq_khz == 22.0);
  CHECK(c.channel.spreading == 1.5);
  CHECK(c.channel.sound_speed == 1500.0);
  CHECK(c.channel.tx_power == 100.0);
  CHECK(c.channel.link_quality_db == 10.0);
  REQUIRE(c.anchors.size() == 5);
  CHECK(c.anchors[0].x == 0.0);
  CHECK(c.anchors[0].y == 500.0);
  CHECK(c.anchors[1].x == -500.0);
  CHECK(c.anchors[1].y == -500.0);
  CHECK(c.anchors[2].x == 500.0);
  CHECK(c.anchors[2].y == -500.0);
  CHECK(c.anchors[3].x == -500.0);
  CHECK(c.anchors[3].y == 500.0);
  CHECK(c.anchors[4].x == 0.0);
  CHECK(c.anchors[4].y == -500.0);
  CHECK(c.num_anchors == 3);
  CHECK(c.legitimate.x == 0.0);
  CHECK(c.legitimate.y == 0.0);
  CHECK(c.attacker.kind == AttackerKind::fixed);
  CHECK(c.attacker.point.x == 1.0);
  CHECK(c.attacker.point.y == 1.0);
  CHECK(c.trials == 1000000);
  CHECK(c.mode == "both");
  CHECK(c.format == "csv");

  SUBCASE("default threshold hits the 5% analytic false-alarm point") {
    const Scenario s = build_scenario(c);
    const WeightedChiSquareSpec h0 =
        spec_under_h0(s.system, s.legitimate, s.channel);
    CHECK(std::abs(analytic_far(h0, c.threshold) - 0.05) < 1e-8);
  }
}

TEST_CASE("serialize-parse round trip is exact") {
  SUBCASE("defaults") {
    const ExperimentConfig c = default_config();
    const ExperimentConfig back = parse_config(serialize_config(c), "rt");
    CHECK(same_config(c, back));
    CHECK(serialize_config(back) == serialize_config(c));
  }
  SUBCASE("fully customized config") {
    ExperimentConfig c = default_config();
    c.channel.freq_khz = 17.25;
    c.channel.spreading = 1.75;
    c.channel.sound_speed = 1481.5;
    c.channel.tx_power = 42.0;
    c.channel.link_quality_db = -3.5;
    c.channel.processing_gain = 123456789.0;
    c.channel.sigma_scale = 0.125;
    c.anchors = {{1.5, 2.25}, {-3.75, 4.0}, {5.0, -6.125}, {7.0, 8.0}};
    c.num_anchors = 0;
    c.legitimate = {0.1, -0.2};
    c.attacker.kind = AttackerKind::circle;
    c.attacker.point = {12.5, -12.5};
    c.attacker.extent = 250.0;
    c.attacker.radius = 33.125;
    c.threshold = 0.123456789012345678;
    c.trials = 98765;
    c.seed = 18446744073709551615ull;  // largest 64-bit value
    c.threads = 4;
    c.mode = "montecarlo";
    c.figure = "fig4";
    c.out = "results/some file.csv";
    c.gnuplot = true;
    c.sweep_axis = "radius_R";
    c.sweep_values = {1.0, 2.5, 1e-7};
    c.threshold_grid = {0.5, 1.5, 2.5};
    const ExperimentConfig back = parse_config(serialize_config(c), "rt");
    CHECK(same_config(c, back));
    CHECK(serialize_config(back) == serialize_config(c));
  }
}

TEST_CASE("partial files override defaults only where present") {
  const ExperimentConfig c = parse_config(
      "# comment line\n"
      "\n"
      "channel.link_quality_db = -5  # trailing comment\n"
      "trials = 5000\n"
      "out = \"a#b.csv\"  # hash inside quotes survives\n",
      "partial");
  CHECK(c.channel.link_quality_db == -5.0);
  CHECK(c.trials == 5000);
  CHECK(c.out == "a#b.csv");
  // Untouched keys keep their defaults.
  CHECK(c.channel.freq_khz == 22.0);
  CHECK(c.num_anchors == 3);
}

TEST_CASE("diagnostics carry file and line") {
  try {
    parse_config("trials = 1000\nbogus_key = 3\n", "demo.cfg");
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    CHECK(e.file() == "demo.cfg");
    CHECK(e.line() == 2);
    CHECK(std::string(e.what()).find("bogus_key") != std::string::npos);
    CHECK(std::string(e.what()).find("demo.cfg:2") != std::string::npos);
  }
}

TEST_CASE("malformed values are rejected with the offending field named") {
  // Negative trial counts are meaningless.
  try {
    parse_config("trials = -5\n", "bad.cfg");
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    CHECK(std::string(e.what()).find("trials") != std::string::npos);
  }
  CHECK_THROWS_AS(parse_config("trials = 0\n", "f"), ConfigError);
  CHECK_THROWS_AS(parse_config("trials = 2.5\n", "f"), ConfigError);
  CHECK_THROWS_AS(parse_config("seed = -1\n", "f"), ConfigError);
  CHECK_THROWS_AS(parse_config("threshold = -2\n", "f"), ConfigError);
  CHECK_THROWS_AS(parse_config("num_anchors = -1\n", "f"), ConfigError);
  CHECK_THROWS_AS(parse_config("mode = sometimes\n", "f"), ConfigError);
  CHECK_THROWS_AS(parse_config("figure = fig9\n", "f"), ConfigError);
  CHECK_THROWS_AS(parse_config("format = json\n", "f"), ConfigError);
  CHECK_THROWS_AS(parse_config("attacker.model = teleport\n", "f"),
                  ConfigError);
  CHECK_THROWS_AS(parse_config("sweep_axis = frequency\n", "f"), ConfigError);
  CHECK_THROWS_AS(parse_config("gnuplot = maybe\n", "f"), ConfigError);
  CHECK_THROWS_AS(parse_config("anchors = [1, 2, 3]\n", "f"), ConfigError);
  CHECK_THROWS_AS(parse_config("anchors = [1, 2, x, 4]\n", "f"), ConfigError);
  CHECK_THROWS_AS(parse_config("legitimate = [1]\n", "f"), ConfigError);
  CHECK_THROWS_AS(parse_config("out = \"unterminated\n", "f"), ConfigError);
  CHECK_THROWS_AS(parse_config("sweep_values = [1, 2\n", "f"), ConfigError);
  CHECK_THROWS_AS(parse_config("just a line\n", "f"), ConfigError);
  CHECK_THROWS_AS(parse_config("= 5\n", "f"), ConfigError);
  CHECK_THROWS_AS(parse_config("trials =\n", "f"), ConfigError);
  CHECK_THROWS_AS(parse_config("channel.freq_khz = fast\n", "f"), ConfigError);
}

TEST_CASE("scenario assembly") {
  ExperimentConfig c = default_config();
  SUBCASE("uses the first num_anchors anchors") {
    const Scenario s3 = build_scenario(c);
    CHECK(s3.system.size() == 3);
    c.num_anchors = 5;
    const Scenario s5 = build_scenario(c);
    CHECK(s5.system.size() == 5);
    c.num_anchors = 0;  // 0 = all
    CHECK(build_scenario(c).system.size() == 5);
  }
  SUBCASE("copies the run parameters") {
    c.trials = 777;
    c.seed = 99;
    c.threads = 2;
    c.threshold = 123.5;
    const Scenario s = build_scenario(c);
    CHECK(s.trials == 777);
    CHECK(s.seed == 99);
    CHECK(s.threads == 2);
    CHECK(s.threshold == 123.5);
    CHECK(s.legitimate.position.x == 0.0);
  }
  SUBCASE("rejects more anchors than listed") {
    c.num_anchors = 6;
    CHECK_THROWS_AS(build_scenario(c), std::invalid_argument);
  }
  SUBCASE("rejects degenerate active geometry") {
    c.anchors = {{0, 0}, {100, 0}, {200, 0}, {0, 100}};
    c.num_anchors = 3;  // first three are collinear
    CHECK_THROWS_AS(build_scenario(c), std::invalid_argument);
  }
}

TEST_CASE("config files load from disk") {
  const std::string path = "test_config_tmp.cfg";
  {
    std::ofstream out(path);
    out << "trials = 4242\nchannel.link_quality_db = 7.5\n";
  }
  const ExperimentConfig c = load_config_file(path);
  CHECK(c.trials == 4242);
  CHECK(c.channel.link_quality_db == 7.5);
  std::remove(path.c_str());

  CHECK_THROWS_AS(load_config_file("definitely_missing_dir/nope.cfg"),
                  IoError);
}
