// uwauth_cli.cpp -- command-line front end: loads a config, applies flag
// overrides, and dispatches analytic / simulate / roc / sweep / figure runs.
//
// Exit codes: 0 success, 2 configuration or usage error, 3 numerical
// failure, 4 I/O error.
#include <cstdint>
#include <exception>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "uwauth/config.hpp"
#include "uwauth/errors.hpp"
#include "uwauth/experiment.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitNumerical = 3;
constexpr int kExitIo = 4;

int dispatch(const std::string& command_name, const std::string& config_path,
             const CLI::App* sub, std::uint64_t seed, std::uint64_t trials,
             int threads, const std::string& out, const std::string& format,
             const std::string& figure_id) {
  uwauth::ExperimentConfig config = config_path.empty()
                                        ? uwauth::default_config()
                                        : uwauth::load_config_file(config_path);
  if (sub->count("--seed")) config.seed = seed;
  if (sub->count("--trials")) {
    if (trials < 1) throw std::invalid_argument("trials must be >= 1");
    config.trials = trials;
  }
  if (sub->count("--threads")) {
    if (threads < 0) throw std::invalid_argument("threads must be >= 0");
    config.threads = threads;
  }
  if (sub->count("--out")) config.out = out;
  if (sub->count("--format")) {
    if (format != "csv")
      throw std::invalid_argument("unsupported format '" + format +
                                  "' (only csv)");
    config.format = format;
  }
  if (!figure_id.empty()) config.figure = figure_id;

  const uwauth::Command command = uwauth::parse_command(command_name);
  if (command == uwauth::Command::figure && config.figure.empty())
    throw std::invalid_argument(
        "figure command requires an id (fig2|fig3|fig4|fig5)");
  uwauth::run_experiment(config, command);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Position-based transmitter authentication for underwater acoustic "
      "networks: analytic error-rate laws and seeded Monte Carlo experiments"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out;
  std::string format = "csv";
  std::string figure_id;
  std::uint64_t seed = 0;
  std::uint64_t trials = 0;
  int threads = 0;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", config_path, "experiment config file");
    sub->add_option("--seed", seed, "master seed override");
    sub->add_option("--trials", trials,
                    "Monte Carlo trials per hypothesis override");
    sub->add_option("--threads", threads,
                    "worker thread count override (0 = hardware)");
    sub->add_option("--out", out, "output CSV path (default: stdout)");
    sub->add_option("--format", format, "output format (csv)");
  };

  add_common(app.add_subcommand(
      "analytic", "evaluate the analytic error-rate laws at the threshold"));
  add_common(app.add_subcommand(
      "simulate", "estimate empirical error rates at the threshold"));
  add_common(app.add_subcommand(
      "roc", "trace ROC curves over a threshold grid"));
  add_common(app.add_subcommand(
      "sweep", "error rates along sweep_axis over sweep_values"));
  CLI::App* figure =
      app.add_subcommand("figure", "run a canned figure recipe");
  figure->add_option("id", figure_id, "recipe id (fig2|fig3|fig4|fig5)")
      ->required();
  add_common(figure);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfig;
  }

  const CLI::App* sub = app.get_subcommands().front();
  try {
    return dispatch(sub->get_name(), config_path, sub, seed, trials, threads,
                    out, format, figure_id);
  } catch (const uwauth::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const uwauth::NumericalError& e) {
    std::cerr << "numerical error: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const uwauth::IoError& e) {
    std::cerr << "i/o error: " << e.what() << "\n";
    return kExitIo;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::domain_error& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNumerical;
  }
}
