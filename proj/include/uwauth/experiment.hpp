// experiment.hpp -- orchestration: turns a parsed configuration plus a
// command into analytic evaluations, Monte Carlo runs, figure-recipe batches,
// and CSV output (file or stream), with one summary line per result row on
// stderr.
#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "uwauth/analytic.hpp"
#include "uwauth/config.hpp"

namespace uwauth {

enum class Command {
  analytic,  // evaluate the analytic laws at the configured threshold
  simulate,  // Monte Carlo error rates at the configured threshold
  roc,       // analytic and/or empirical ROC over a threshold grid
  sweep,     // error rates along sweep_axis over sweep_values
  figure,    // canned recipe selected by config.figure (fig2..fig5)
};

// Maps the CLI subcommand spelling; throws std::invalid_argument otherwise.
Command parse_command(const std::string& name);

// Runs one experiment.  CSV goes to config.out when set, otherwise to
// *stdout_sink (std::cout when null); summaries go to stderr.  Throws
// ConfigError / std::invalid_argument on bad settings, NumericalError on
// evaluator failures, IoError on unwritable outputs.
void run_experiment(const ExperimentConfig& config, Command command,
                    std::ostream* stdout_sink = nullptr);

// Default ROC threshold grid: false-alarm targets geometrically spaced in
// [1e-4, 0.99] mapped through the analytic null law's quantile function.
std::vector<double> default_threshold_grid(const WeightedChiSquareSpec& spec_h0);

}  // namespace uwauth
