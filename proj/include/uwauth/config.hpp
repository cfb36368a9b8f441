// config.hpp -- experiment configuration: schema-validated key=value files,
// defaults mirroring the reference evaluation setup, and scenario assembly.
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "uwauth/channel.hpp"
#include "uwauth/geometry.hpp"
#include "uwauth/simulator.hpp"

namespace uwauth {

// Flat experiment description.  Every field maps to exactly one config key
// (see serialize_config for the full key list); parsing starts from
// default_config() and applies overrides, so partial files are valid.
struct ExperimentConfig {
  ChannelParams channel;

  std::vector<Vec2> anchors;  // full anchor pool
  int num_anchors = 0;        // how many anchors to use (0 = all)
  Vec2 legitimate;            // enrolled position

  AttackerModel attacker;

  double threshold = 0.0;
  std::uint64_t trials = 1000000;
  std::uint64_t seed = 0;
  int threads = 0;

  std::string mode = "both";  // analytic | montecarlo | both
  std::string figure;         // "", fig2, fig3, fig4, fig5
  std::string out;            // output path ("" = stdout)
  std::string format = "csv";
  bool gnuplot = false;       // also emit a gnuplot script next to the CSV

  std::string sweep_axis;     // "", link_quality_db, radius_R, threshold
  std::vector<double> sweep_values;
  std::vector<double> threshold_grid;
};

// Reference evaluation defaults: five anchors on the 1000x1000 m region
// corners/edges, first three active; 22 kHz carrier, spreading 1.5, sound
// speed 1500 m/s, 100 W transmit power, link quality 10 dB; legitimate node
// at the origin; fixed attacker at (1,1) m; 10^6 trials.  The threshold is
// set to the analytic 5% false-alarm point of the measurement-sum law for
// this geometry and channel.
ExperimentConfig default_config();

// Parses config text (key = value lines, '#' comments, dotted keys, numbers,
// quoted strings, [a, b, ...] lists).  Unknown keys, malformed values, and
// out-of-range fields raise ConfigError carrying file name and line number.
ExperimentConfig parse_config(const std::string& text,
                              const std::string& filename);

// Reads and parses a config file; IoError if unreadable.
ExperimentConfig load_config_file(const std::string& path);

// Canonical text form: one line per key, fixed order, full precision.
// parse_config(serialize_config(c)) reproduces c exactly.
std::string serialize_config(const ExperimentConfig& config);

// Builds the runnable scenario: constructs the anchor geometry (first
// num_anchors entries), enrolls the legitimate profile, and validates
// everything.  Throws std::invalid_argument on inconsistent settings.
Scenario build_scenario(const ExperimentConfig& config);

}  // namespace uwauth
