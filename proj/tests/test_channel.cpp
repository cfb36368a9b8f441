// test_channel.cpp -- absorption, pathloss, and ranging-noise model checks
// against independently computed reference values.
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "doctest.h"
#include "uwauth/channel.hpp"
#include "uwauth/errors.hpp"

using namespace uwauth;

namespace {

ChannelParams reference_params() {
  ChannelParams p;
  p.freq_khz = 22.0;
  p.spreading = 1.5;
  p.sound_speed = 1500.0;
  p.tx_power = 100.0;
  p.link_quality_db = 0.0;
  p.processing_gain = 1.0;
  p.sigma_scale = 1.0;
  return p;
}

std::vector<std::string> g_warnings;
void collect_warning(const std::string& msg) { g_warnings.push_back(msg); }

}  // namespace

TEST_CASE("absorption matches reference evaluations") {
  // alpha(f) = 0.11 f^2/(1+f^2) + 44 f^2/(4100+f^2) + 2.75e-4 f^2 + 0.003,
  // evaluated by hand at three frequencies.
  CHECK(thorp_absorption_db_per_km(22.0) ==
        doctest::Approx(4.891597454165992).epsilon(1e-14));
  CHECK(thorp_absorption_db_per_km(10.0) ==
        doctest::Approx(1.1870299387081567).epsilon(1e-14));
  CHECK(thorp_absorption_db_per_km(0.001) ==
        doctest::Approx(0.003000121006597315).epsilon(1e-14));
}

TEST_CASE("absorption grows with frequency") {
  double prev = thorp_absorption_db_per_km(0.5);
  for (double f = 1.0; f <= 100.0; f += 0.5) {
    const double cur = thorp_absorption_db_per_km(f);
    CHECK(cur > prev);
    prev = cur;
  }
}

TEST_CASE("pathloss matches reference evaluations") {
  const ChannelParams p = reference_params();
  CHECK(pathloss_db(p, 500.0) ==
        doctest::Approx(42.930348792123276).epsilon(1e-14));
  CHECK(pathloss_db(p, 1000.0) ==
        doctest::Approx(49.89159745416599).epsilon(1e-14));
}

TEST_CASE("pathloss grows with distance") {
  const ChannelParams p = reference_params();
  double prev = pathloss_db(p, 1.0);
  for (double d = 10.0; d <= 5000.0; d += 10.0) {
    const double cur = pathloss_db(p, d);
    CHECK(cur > prev);
    prev = cur;
  }
}

TEST_CASE("ranging sigma matches reference evaluations") {
  ChannelParams p = reference_params();
  CHECK(ranging_sigma(p, 500.0) ==
        doctest::Approx(105094.18896664122).epsilon(1e-12));
  p.processing_gain = 4e10;
  CHECK(ranging_sigma(p, 500.0) ==
        doctest::Approx(0.525470944833206).epsilon(1e-12));
}

TEST_CASE("ranging sigma scaling laws") {
  ChannelParams p = reference_params();
  p.processing_gain = 4e10;
  const double base = ranging_sigma(p, 500.0);

  SUBCASE("10 dB more link quality shrinks sigma by sqrt(10)") {
    p.link_quality_db = 10.0;
    CHECK(ranging_sigma(p, 500.0) ==
          doctest::Approx(base / std::sqrt(10.0)).epsilon(1e-12));
  }
  SUBCASE("4x processing gain halves sigma") {
    p.processing_gain *= 4.0;
    CHECK(ranging_sigma(p, 500.0) == doctest::Approx(base / 2.0).epsilon(1e-12));
  }
  SUBCASE("sigma scale is a direct multiplier") {
    p.sigma_scale = 3.0;
    CHECK(ranging_sigma(p, 500.0) == doctest::Approx(3.0 * base).epsilon(1e-12));
  }
  SUBCASE("zero sigma scale means noiseless") {
    p.sigma_scale = 0.0;
    CHECK(ranging_sigma(p, 500.0) == 0.0);
  }
  SUBCASE("sigma grows with distance") {
    CHECK(ranging_sigma(p, 1000.0) > base);
  }
}

TEST_CASE("parameter validation") {
  ChannelParams p = reference_params();
  SUBCASE("valid parameters pass") { CHECK_NOTHROW(validate(p)); }
  SUBCASE("non-positive frequency rejected") {
    p.freq_khz = 0.0;
    CHECK_THROWS_AS(validate(p), std::invalid_argument);
  }
  SUBCASE("non-positive sound speed rejected") {
    p.sound_speed = -1500.0;
    CHECK_THROWS_AS(validate(p), std::invalid_argument);
  }
  SUBCASE("non-positive transmit power rejected") {
    p.tx_power = 0.0;
    CHECK_THROWS_AS(validate(p), std::invalid_argument);
  }
  SUBCASE("non-positive processing gain rejected") {
    p.processing_gain = 0.0;
    CHECK_THROWS_AS(validate(p), std::invalid_argument);
  }
  SUBCASE("negative sigma scale rejected") {
    p.sigma_scale = -1.0;
    CHECK_THROWS_AS(validate(p), std::invalid_argument);
  }
}

TEST_CASE("unusual spreading factor warns but is accepted") {
  ChannelParams p = reference_params();
  p.spreading = 2.5;
  g_warnings.clear();
  set_warning_handler(collect_warning);
  CHECK_NOTHROW(validate(p));
  set_warning_handler(nullptr);
  REQUIRE(g_warnings.size() == 1);
  CHECK(g_warnings[0].find("spreading") != std::string::npos);
}
