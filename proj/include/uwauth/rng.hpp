// rng.hpp -- counter-based deterministic random numbers.
//
// Every Monte Carlo trial owns a private generator seeded from
// (master seed, stream id, trial index) through SplitMix64 mixing, so results
// are bit-identical for any thread count or execution order.
#pragma once

#include <cmath>
#include <cstdint>

namespace uwauth {

// SplitMix64: tiny, statistically solid 64-bit generator.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  // Uniform draw in (0, 1]; never returns 0, so log(u) is always finite.
  double uniform01() {
    return (static_cast<double>(next() >> 11) + 1.0) * 0x1.0p-53;
  }

 private:
  std::uint64_t state_;
};

// One round of the SplitMix64 output function, used to hash seed components.
inline std::uint64_t mix64(std::uint64_t z) {
  z += 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

// Seed for a named stream (hypothesis, sweep point, ...) under a master seed.
inline std::uint64_t derive_stream_seed(std::uint64_t master, std::uint64_t stream) {
  return mix64(master ^ mix64(stream ^ 0xA511E9B3D1C9F2A7ULL));
}

// Seed for one trial within a stream.  Pure function of its arguments.
inline std::uint64_t derive_trial_seed(std::uint64_t stream_seed, std::uint64_t trial) {
  return mix64(stream_seed ^ mix64(trial ^ 0xC6A4A7935BD1E995ULL));
}

// Standard normal sampler via Box-Muller on a private SplitMix64.
class NormalSampler {
 public:
  explicit NormalSampler(std::uint64_t seed) : rng_(seed) {}

  double next() {
    if (have_cached_) {
      have_cached_ = false;
      return cached_;
    }
    const double u1 = rng_.uniform01();
    const double u2 = rng_.uniform01();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double a = 6.283185307179586476925286766559 * u2;
    cached_ = r * std::sin(a);
    have_cached_ = true;
    return r * std::cos(a);
  }

 private:
  SplitMix64 rng_;
  double cached_ = 0.0;
  bool have_cached_ = false;
};

}  // namespace uwauth
