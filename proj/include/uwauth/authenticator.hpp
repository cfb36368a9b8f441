// authenticator.hpp -- position-based message authentication: compare a fresh
// position estimate against an enrolled profile through a quadratic statistic,
// plus a per-anchor distance-gate baseline for comparison studies.
#pragma once

#include <vector>

#include "uwauth/channel.hpp"
#include "uwauth/geometry.hpp"
#include "uwauth/localization.hpp"

namespace uwauth {

// Enrolled identity: claimed position and its true distances to every anchor.
struct LegitimateProfile {
  Vec2 position;
  std::vector<double> distances;
};

// Builds a profile whose distances are computed from the geometry.
LegitimateProfile make_profile(const LocalizationSystem& system, Vec2 position);

// Builds a profile from externally supplied distances (e.g. a calibration
// round).  Each distance must agree with the geometry to 1e-9 metres;
// throws std::invalid_argument otherwise.
LegitimateProfile make_profile(const LocalizationSystem& system, Vec2 position,
                               std::vector<double> distances);

// Authentication statistic: squared norm of the position discrepancy lifted
// back into measurement space,
//   TS = || statistic_lift * (estimate - enrolled position) ||^2 .
double test_statistic(const LocalizationSystem& system, Vec2 estimate,
                      const LegitimateProfile& profile);

enum class Decision {
  accept,  // consistent with the enrolled position (legitimate)
  reject,  // flagged as malicious
};

// Threshold test: statistic <= threshold accepts.  The threshold must be a
// finite non-negative number and the statistic must not be NaN; throws
// std::invalid_argument otherwise.
Decision decide(double statistic, double threshold);

// Distance-only baseline: anchor i alone accepts when
// |measured_i - enrolled_i| <= tau_i.  Thresholds are calibrated per anchor
// from the Gaussian ranging model so each anchor false-alarms with rate
// far_target:  tau_i = sigma_i * z_{1 - far_target/2}.
std::vector<double> baseline_thresholds(const ChannelParams& params,
                                        const LegitimateProfile& profile,
                                        double far_target);

Decision baseline_decide(double measured, double enrolled, double tau);

}  // namespace uwauth
