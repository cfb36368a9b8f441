// test_rng.cpp -- counter-based RNG: reference outputs, stream independence,
// and Gaussian sampler moments.
#include <cmath>
#include <cstdint>
#include <unordered_set>
#include <vector>

#include "doctest.h"
#include "uwauth/rng.hpp"

using namespace uwauth;

TEST_CASE("splitmix64 reference sequence") {
  // First outputs of the standard SplitMix64 stream for two seeds.
  SplitMix64 a(0);
  CHECK(a.next() == UINT64_C(0xE220A8397B1DCDAF));
  CHECK(a.next() == UINT64_C(0x6E789E6AA1B965F4));
  CHECK(a.next() == UINT64_C(0x06C45D188009454F));

  SplitMix64 b(UINT64_C(0x123456789ABCDEF0));
  CHECK(b.next() == UINT64_C(0x161922C645CE50E8));
  CHECK(b.next() == UINT64_C(0xAD760CAFA1697B60));
  CHECK(b.next() == UINT64_C(0x3501FF44902CA50D));
}

TEST_CASE("uniform01 lies in (0, 1] and matches its definition") {
  SplitMix64 r(0);
  CHECK(r.uniform01() == doctest::Approx(0.8833108082136427).epsilon(1e-15));
  SplitMix64 s(987654321);
  double sum = 0.0;
  for (int i = 0; i < 100000; ++i) {
    const double u = s.uniform01();
    REQUIRE(u > 0.0);
    REQUIRE(u <= 1.0);
    sum += u;
  }
  CHECK(sum / 100000.0 == doctest::Approx(0.5).epsilon(0.01));
}

TEST_CASE("derived seeds are distinct and deterministic") {
  const std::uint64_t master = 42;
  std::unordered_set<std::uint64_t> seen;
  for (std::uint64_t stream = 0; stream < 100; ++stream) {
    const std::uint64_t s = derive_stream_seed(master, stream);
    for (std::uint64_t trial = 0; trial < 100; ++trial)
      seen.insert(derive_trial_seed(s, trial));
  }
  CHECK(seen.size() == 10000);
  CHECK(derive_stream_seed(42, 7) == derive_stream_seed(42, 7));
  CHECK(derive_stream_seed(42, 7) != derive_stream_seed(43, 7));
  CHECK(derive_trial_seed(1, 2) != derive_trial_seed(2, 1));
}

TEST_CASE("gaussian sampler moments and symmetry") {
  NormalSampler g(20240601);
  const int n = 200000;
  double sum = 0.0, sumsq = 0.0;
  int within196 = 0;
  for (int i = 0; i < n; ++i) {
    const double z = g.next();
    sum += z;
    sumsq += z * z;
    if (std::abs(z) < 1.959963984540054) ++within196;
  }
  const double mean = sum / n;
  const double var = sumsq / n - mean * mean;
  CHECK(std::abs(mean) < 0.01);
  CHECK(var == doctest::Approx(1.0).epsilon(0.02));
  CHECK(double(within196) / n == doctest::Approx(0.95).epsilon(0.005));
}

TEST_CASE("gaussian sampler is deterministic per seed") {
  NormalSampler a(777), b(777), c(778);
  std::vector<double> va, vb, vc;
  for (int i = 0; i < 32; ++i) {
    va.push_back(a.next());
    vb.push_back(b.next());
    vc.push_back(c.next());
  }
  CHECK(va == vb);
  CHECK(va != vc);
}
