// simulator.hpp -- seeded Monte Carlo engine: runs legitimate and attacker
// transmissions through the full nonlinear measure-localize-decide pipeline
// and estimates empirical error rates and ROC curves.  Results are
// bit-reproducible for a fixed seed regardless of thread count.
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "uwauth/analytic.hpp"
#include "uwauth/authenticator.hpp"
#include "uwauth/channel.hpp"
#include "uwauth/localization.hpp"

namespace uwauth {

enum class AttackerKind {
  fixed,        // attacker at a fixed point
  uniform_box,  // uniform over a square of half-side `extent` around the target
  circle,       // uniform on the circle of radius `radius` around the target
};

struct AttackerModel {
  AttackerKind kind = AttackerKind::fixed;
  Vec2 point;             // used by: fixed
  double extent = 500.0;  // used by: uniform_box
  double radius = 100.0;  // used by: circle
};

struct Scenario {
  ChannelParams channel;
  LocalizationSystem system;
  LegitimateProfile legitimate;
  AttackerModel attacker;
  double threshold = 0.0;
  std::uint64_t trials = 1000000;  // per hypothesis
  std::uint64_t seed = 0;
  int threads = 0;  // 0 = use hardware concurrency

  Scenario(ChannelParams ch, LocalizationSystem sys, LegitimateProfile prof)
      : channel(std::move(ch)),
        system(std::move(sys)),
        legitimate(std::move(prof)) {}
};

// Throws std::invalid_argument on non-positive attacker model parameters,
// zero trials, or a negative threshold.
void validate(const Scenario& scenario);

struct ErrorRates {
  double empirical_far = 0.0;
  double empirical_mdr = 0.0;
  double ci_far = 0.0;  // 95% binomial halfwidth, 1.96*sqrt(p(1-p)/n)
  double ci_mdr = 0.0;
  std::uint64_t trials_h0 = 0;
  std::uint64_t trials_h1 = 0;
  std::uint64_t seed = 0;
};

// Runs scenario.trials legitimate trials and the same number of attacker
// trials and counts threshold exceedances.
ErrorRates run_trials(const Scenario& scenario);

// Raw statistic samples for both hypotheses, using the same per-trial seeds
// as run_trials; lets callers evaluate many thresholds on one sample set
// (common random numbers) and reuse the H0 set for empirical quantiles.
struct StatisticSamples {
  std::vector<double> h0;
  std::vector<double> h1;
  std::uint64_t seed = 0;
};
StatisticSamples simulate_statistics(const Scenario& scenario);

// Per-anchor distance-gate counters from the same trial stream: anchor i
// false-alarms when |measured_i - enrolled_i| > tau[i] under H0 and misses
// when it stays within tau[i] under H1.
struct BaselineRates {
  std::vector<double> far_per_anchor;
  std::vector<double> mdr_per_anchor;
  std::uint64_t trials_h0 = 0;
  std::uint64_t trials_h1 = 0;
  std::uint64_t seed = 0;
};
BaselineRates run_baseline_trials(const Scenario& scenario,
                                  const std::vector<double>& tau);

// Empirical ROC over a strictly increasing threshold grid, one simulation
// pass with cached statistics.
RocCurve empirical_roc(const Scenario& scenario,
                       const std::vector<double>& threshold_grid);

enum class SweepAxis { link_quality_db, radius_r, threshold };

// CSV-stable axis names: "link_quality_db", "radius_R", "threshold".
std::string to_string(SweepAxis axis);

// One run_trials per value, applying the value to the axis (link quality in
// dB, circle radius in metres, or decision threshold).  Each point gets an
// independent sub-seed derived from the master seed and the value index and
// records it in its ErrorRates.
std::vector<ErrorRates> sweep(const Scenario& scenario_template, SweepAxis axis,
                              const std::vector<double>& values);

// Stable 64-bit hash of everything that determines a simulation's output.
std::uint64_t scenario_fingerprint(const Scenario& scenario);

}  // namespace uwauth
