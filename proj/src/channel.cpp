// channel.cpp -- implementation of the acoustic propagation model.
#include "uwauth/channel.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "uwauth/errors.hpp"

namespace uwauth {

void validate(const ChannelParams& params) {
  if (!(params.freq_khz > 0.0))
    throw std::invalid_argument("ChannelParams: freq_khz must be > 0");
  if (!(params.sound_speed > 0.0))
    throw std::invalid_argument("ChannelParams: sound_speed must be > 0");
  if (!(params.tx_power > 0.0))
    throw std::invalid_argument("ChannelParams: tx_power must be > 0");
  if (!(params.processing_gain > 0.0))
    throw std::invalid_argument("ChannelParams: processing_gain must be > 0");
  if (!(params.sigma_scale >= 0.0))
    throw std::invalid_argument("ChannelParams: sigma_scale must be >= 0");
  if (!std::isfinite(params.link_quality_db))
    throw std::invalid_argument("ChannelParams: link_quality_db must be finite");
  if (params.spreading < 1.0 || params.spreading > 2.0) {
    std::ostringstream os;
    os << "ChannelParams: spreading exponent " << params.spreading
       << " is outside the physical range [1, 2]";
    emit_warning(os.str());
  }
}

double thorp_absorption_db_per_km(double freq_khz) {
  if (!(freq_khz > 0.0))
    throw std::invalid_argument("thorp_absorption_db_per_km: freq_khz must be > 0");
  const double f2 = freq_khz * freq_khz;
  return 0.11 * f2 / (1.0 + f2) + 44.0 * f2 / (4100.0 + f2) + 2.75e-4 * f2 + 0.003;
}

double pathloss_db(const ChannelParams& params, double distance_m) {
  if (!(distance_m > 0.0))
    throw std::invalid_argument("pathloss_db: distance_m must be > 0");
  const double alpha = thorp_absorption_db_per_km(params.freq_khz);
  return params.spreading * 10.0 * std::log10(distance_m) +
         (distance_m / 1000.0) * alpha;
}

double ranging_sigma(const ChannelParams& params, double distance_m) {
  if (params.sigma_scale == 0.0) return 0.0;
  const double pl_lin = std::pow(10.0, pathloss_db(params, distance_m) / 10.0);
  const double lq_lin = std::pow(10.0, params.link_quality_db / 10.0);
  const double sigma = params.sound_speed *
                       std::sqrt(pl_lin / (4.0 * lq_lin * params.processing_gain));
  return params.sigma_scale * sigma;
}

}  // namespace uwauth
