// channel.hpp -- underwater acoustic propagation model: Thorp absorption,
// log-distance path loss, and the ranging noise implied by link quality.
#pragma once

namespace uwauth {

struct ChannelParams {
  double freq_khz = 22.0;          // carrier frequency in kHz
  double spreading = 1.5;          // spreading exponent (1 cylindrical .. 2 spherical)
  double sound_speed = 1500.0;     // propagation speed in m/s
  double tx_power = 100.0;         // transmit power in W (informational; SNR enters via link_quality_db)
  double link_quality_db = 0.0;    // transmit SNR in dB at the reference distance
  double processing_gain = 2e10;   // receiver despreading/integration gain (linear)
  double sigma_scale = 1.0;        // multiplier on ranging noise; 0 disables noise entirely
};

// Checks parameter ranges.  Throws std::invalid_argument on nonsense values
// (non-positive frequency, speed, power or processing gain, negative
// sigma_scale).  A spreading exponent outside [1, 2] is allowed but reported
// through the warning hook since it leaves the physically sensible range.
void validate(const ChannelParams& params);

// Thorp seawater absorption coefficient in dB/km for a frequency in kHz.
// Throws std::invalid_argument if freq_khz <= 0.
double thorp_absorption_db_per_km(double freq_khz);

// One-way acoustic path loss in dB over distance_m metres:
// spreading loss plus Thorp absorption.  Throws std::invalid_argument if
// distance_m <= 0.
double pathloss_db(const ChannelParams& params, double distance_m);

// Standard deviation (metres) of the time-of-arrival ranging error for a link
// of length distance_m.  Derived from the Cramer-Rao style relation
//   sigma = c * sqrt(PL / (4 * LQ * G))
// with PL the linear path loss, LQ the linear link quality and G the
// processing gain; sigma_scale multiplies the result.  sigma_scale == 0
// models perfect (noiseless) ranging.
double ranging_sigma(const ChannelParams& params, double distance_m);

}  // namespace uwauth
