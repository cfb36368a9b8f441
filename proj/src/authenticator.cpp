// authenticator.cpp -- authentication statistic and decision rules.
#include "uwauth/authenticator.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "uwauth/special_functions.hpp"

namespace uwauth {

LegitimateProfile make_profile(const LocalizationSystem& system, Vec2 position) {
  return {position, system.true_distances(position)};
}

LegitimateProfile make_profile(const LocalizationSystem& system, Vec2 position,
                               std::vector<double> distances) {
  const std::vector<double> truth = system.true_distances(position);
  if (distances.size() != truth.size())
    throw std::invalid_argument("make_profile: distance count != anchor count");
  for (std::size_t i = 0; i < truth.size(); ++i)
    if (std::fabs(distances[i] - truth[i]) > 1e-9) {
      std::ostringstream os;
      os << "make_profile: supplied distance " << i << " (" << distances[i]
         << ") disagrees with the geometry (" << truth[i]
         << ") by more than 1e-9 m";
      throw std::invalid_argument(os.str());
    }
  return {position, std::move(distances)};
}

double test_statistic(const LocalizationSystem& system, Vec2 estimate,
                      const LegitimateProfile& profile) {
  Eigen::Vector2d diff(estimate.x - profile.position.x,
                       estimate.y - profile.position.y);
  return (system.statistic_lift() * diff).squaredNorm();
}

Decision decide(double statistic, double threshold) {
  if (!(threshold >= 0.0) || !std::isfinite(threshold))
    throw std::invalid_argument("decide: threshold must be finite and >= 0");
  if (std::isnan(statistic))
    throw std::invalid_argument("decide: statistic is NaN");
  return statistic <= threshold ? Decision::accept : Decision::reject;
}

std::vector<double> baseline_thresholds(const ChannelParams& params,
                                        const LegitimateProfile& profile,
                                        double far_target) {
  if (!(far_target > 0.0 && far_target < 1.0))
    throw std::invalid_argument("baseline_thresholds: far_target must be in (0, 1)");
  const double z = normal_quantile(1.0 - 0.5 * far_target);
  std::vector<double> tau(profile.distances.size());
  for (std::size_t i = 0; i < tau.size(); ++i)
    tau[i] = z * ranging_sigma(params, profile.distances[i]);
  return tau;
}

Decision baseline_decide(double measured, double enrolled, double tau) {
  if (!(tau >= 0.0))
    throw std::invalid_argument("baseline_decide: tau must be >= 0");
  return std::fabs(measured - enrolled) <= tau ? Decision::accept
                                               : Decision::reject;
}

}  // namespace uwauth
