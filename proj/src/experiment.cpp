// experiment.cpp -- command dispatch, figure recipes, and output plumbing.
#include "uwauth/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <iterator>
#include <limits>
#include <sstream>

#include "uwauth/authenticator.hpp"
#include "uwauth/csv.hpp"
#include "uwauth/errors.hpp"
#include "uwauth/rng.hpp"
#include "uwauth/simulator.hpp"

namespace uwauth {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

bool want_analytic(const ExperimentConfig& c) { return c.mode != "montecarlo"; }
bool want_empirical(const ExperimentConfig& c) { return c.mode != "analytic"; }

// Writes already-rendered CSV text to config.out or to the stream sink.
void write_text_output(const std::string& path, const std::string& text,
                       std::ostream* sink) {
  if (path.empty()) {
    std::ostream& os = sink ? *sink : std::cout;
    os << text;
    os.flush();
    if (!os) throw IoError("failed writing results to output stream");
    return;
  }
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw IoError("cannot open output file '" + path + "'");
  out << text;
  out.flush();
  if (!out) throw IoError("failed writing output file '" + path + "'");
}

// "results.csv" + "_tag" -> "results_tag.csv"; no extension -> append.
std::string with_suffix(const std::string& path, const std::string& suffix) {
  const std::size_t slash = path.find_last_of('/');
  const std::size_t dot = path.find_last_of('.');
  if (dot == std::string::npos || (slash != std::string::npos && dot < slash))
    return path + suffix;
  return path.substr(0, dot) + suffix + path.substr(dot);
}

void write_gnuplot_sweep_stub(const ExperimentConfig& c,
                              const std::string& csv_path) {
  if (!c.gnuplot) return;
  if (csv_path.empty()) {
    emit_warning("gnuplot stub requested but output goes to stdout; skipping");
    return;
  }
  const std::string gp = csv_path + ".gp";
  std::ofstream out(gp, std::ios::trunc);
  if (!out) throw IoError("cannot open gnuplot stub '" + gp + "'");
  out << "# gnuplot stub for " << csv_path << " (sweep schema)\n"
      << "set datafile separator ','\n"
      << "set key autotitle columnhead\n"
      << "set logscale y\n"
      << "set xlabel 'value'\n"
      << "set ylabel 'rate'\n"
      << "plot '" << csv_path << "' using 2:4 with linespoints, \\\n"
      << "     '" << csv_path << "' using 2:5 with linespoints, \\\n"
      << "     '" << csv_path << "' using 2:6 with linespoints, \\\n"
      << "     '" << csv_path << "' using 2:7 with linespoints\n";
  if (!out.flush()) throw IoError("failed writing gnuplot stub '" + gp + "'");
}

void write_gnuplot_roc_stub(const ExperimentConfig& c,
                            const std::string& csv_path) {
  if (!c.gnuplot) return;
  if (csv_path.empty()) {
    emit_warning("gnuplot stub requested but output goes to stdout; skipping");
    return;
  }
  const std::string gp = csv_path + ".gp";
  std::ofstream out(gp, std::ios::trunc);
  if (!out) throw IoError("cannot open gnuplot stub '" + gp + "'");
  out << "# gnuplot stub for " << csv_path << " (roc schema)\n"
      << "set datafile separator ','\n"
      << "set key autotitle columnhead\n"
      << "set xlabel 'P_fa'\n"
      << "set ylabel 'P_d'\n"
      << "plot '" << csv_path << "' using 2:3 with linespoints\n";
  if (!out.flush()) throw IoError("failed writing gnuplot stub '" + gp + "'");
}

void summarize_row(const SweepRow& row) {
  std::cerr << row.axis << "=" << format_csv_value(row.value)
            << " eps_th=" << format_csv_value(row.eps_th)
            << " far_analytic=" << format_csv_value(row.far_analytic)
            << " mdr_analytic=" << format_csv_value(row.mdr_analytic)
            << " far_empirical=" << format_csv_value(row.far_empirical)
            << " mdr_empirical=" << format_csv_value(row.mdr_empirical)
            << " trials=" << row.trials << " seed=" << row.seed << "\n";
}

void summarize_curve(const RocCurve& curve, std::uint64_t seed) {
  std::cerr << "roc provenance=" << curve.provenance
            << " points=" << curve.points.size() << " seed=" << seed << "\n";
}

void fill_empirical(SweepRow* row, const ErrorRates& rates) {
  row->far_empirical = rates.empirical_far;
  row->mdr_empirical = rates.empirical_mdr;
  row->ci_far = rates.ci_far;
  row->ci_mdr = rates.ci_mdr;
  row->trials = rates.trials_h0;
  row->seed = rates.seed;
}

// Single-point evaluation shared by the analytic and simulate commands.
std::vector<SweepRow> point_rows(const ExperimentConfig& c, bool analytic_only) {
  Scenario scenario = build_scenario(c);
  SweepRow row;
  row.axis = "threshold";
  row.value = scenario.threshold;
  row.eps_th = scenario.threshold;
  row.far_analytic = kNaN;
  row.mdr_analytic = kNaN;
  row.far_empirical = kNaN;
  row.mdr_empirical = kNaN;
  row.ci_far = kNaN;
  row.ci_mdr = kNaN;
  row.trials = 0;
  row.seed = c.seed;

  if (analytic_only || want_analytic(c)) {
    const WeightedChiSquareSpec h0 =
        spec_under_h0(scenario.system, scenario.legitimate, scenario.channel);
    row.far_analytic = analytic_far(h0, scenario.threshold);
    if (scenario.attacker.kind == AttackerKind::fixed) {
      const WeightedChiSquareSpec h1 =
          spec_under_h1(scenario.system, scenario.legitimate,
                        scenario.attacker.point, scenario.channel);
      row.mdr_analytic = analytic_mdr(h1, scenario.threshold);
    } else {
      emit_warning(
          "analytic MDR needs a fixed attacker position; emitting nan");
    }
  }
  if (!analytic_only && want_empirical(c))
    fill_empirical(&row, run_trials(scenario));

  summarize_row(row);
  return {row};
}

void run_roc(const ExperimentConfig& c, std::ostream* sink) {
  Scenario scenario = build_scenario(c);
  const WeightedChiSquareSpec h0 =
      spec_under_h0(scenario.system, scenario.legitimate, scenario.channel);
  const std::vector<double> grid = c.threshold_grid.empty()
                                       ? default_threshold_grid(h0)
                                       : c.threshold_grid;

  std::ostringstream text;
  bool wrote_header = false;
  auto emit = [&](const RocCurve& curve, std::uint64_t seed) {
    if (wrote_header)
      append_roc_csv(text, curve, seed);
    else
      write_roc_csv(text, curve, seed);
    wrote_header = true;
    summarize_curve(curve, seed);
  };

  if (want_analytic(c)) {
    if (scenario.attacker.kind == AttackerKind::fixed) {
      const WeightedChiSquareSpec h1 =
          spec_under_h1(scenario.system, scenario.legitimate,
                        scenario.attacker.point, scenario.channel);
      emit(analytic_roc(h0, h1, grid), 0);
    } else {
      emit_warning(
          "analytic ROC needs a fixed attacker position; skipping curve");
    }
  }
  if (want_empirical(c)) emit(empirical_roc(scenario, grid), scenario.seed);

  if (!wrote_header) {
    RocCurve empty;
    empty.provenance = "analytic";
    write_roc_csv(text, empty, 0);
  }
  write_text_output(c.out, text.str(), sink);
  write_gnuplot_roc_stub(c, c.out);
}

SweepAxis axis_from_string(const std::string& name) {
  if (name == "link_quality_db") return SweepAxis::link_quality_db;
  if (name == "radius_R") return SweepAxis::radius_r;
  if (name == "threshold") return SweepAxis::threshold;
  throw std::invalid_argument(
      "sweep_axis must be link_quality_db, radius_R, or threshold, got '" +
      name + "'");
}

std::vector<SweepRow> sweep_rows(const ExperimentConfig& c) {
  if (c.sweep_axis.empty())
    throw std::invalid_argument("sweep requires sweep_axis to be set");
  if (c.sweep_values.empty())
    throw std::invalid_argument("sweep requires a non-empty sweep_values list");
  const SweepAxis axis = axis_from_string(c.sweep_axis);
  Scenario scenario = build_scenario(c);

  std::vector<ErrorRates> rates;
  if (want_empirical(c)) rates = sweep(scenario, axis, c.sweep_values);

  std::vector<SweepRow> rows;
  for (std::size_t i = 0; i < c.sweep_values.size(); ++i) {
    const double v = c.sweep_values[i];
    SweepRow row;
    row.axis = c.sweep_axis;
    row.value = v;
    row.eps_th = axis == SweepAxis::threshold ? v : c.threshold;
    row.far_analytic = kNaN;
    row.mdr_analytic = kNaN;
    row.far_empirical = kNaN;
    row.mdr_empirical = kNaN;
    row.ci_far = kNaN;
    row.ci_mdr = kNaN;
    row.trials = 0;
    row.seed = c.seed;

    if (want_analytic(c)) {
      ChannelParams ch = scenario.channel;
      if (axis == SweepAxis::link_quality_db) ch.link_quality_db = v;
      const WeightedChiSquareSpec h0 =
          spec_under_h0(scenario.system, scenario.legitimate, ch);
      row.far_analytic = analytic_far(h0, row.eps_th);
      if (scenario.attacker.kind == AttackerKind::fixed) {
        const WeightedChiSquareSpec h1 = spec_under_h1(
            scenario.system, scenario.legitimate, scenario.attacker.point, ch);
        row.mdr_analytic = analytic_mdr(h1, row.eps_th);
      }
    }
    if (want_empirical(c)) fill_empirical(&row, rates[i]);
    summarize_row(row);
    rows.push_back(std::move(row));
  }
  if (want_analytic(c) && scenario.attacker.kind != AttackerKind::fixed)
    emit_warning("analytic MDR needs a fixed attacker position; emitting nan");
  return rows;
}

// fig2: false-alarm rate against link quality at a fixed decision threshold.
std::vector<SweepRow> fig2_rows(const ExperimentConfig& c) {
  ExperimentConfig cfg = c;
  cfg.sweep_axis = "link_quality_db";
  cfg.sweep_values.clear();
  for (int lq = -10; lq <= 20; lq += 2) cfg.sweep_values.push_back(lq);
  return sweep_rows(cfg);
}

// fig3: missed-detection rate against link quality for an attacker placed
// uniformly in the operating region, with a matched-false-alarm distance
// gate baseline.  The decision threshold is re-derived from the analytic
// null law at each link quality so every point targets a 5% false-alarm
// rate; the baseline uses the per-anchor gate with the same target.
std::vector<SweepRow> fig3_rows(const ExperimentConfig& c) {
  constexpr double kFarTarget = 0.05;
  static const int kLq[] = {-10, -5, 0, 5, 10, 15, 20};

  ExperimentConfig cfg = c;
  cfg.attacker.kind = AttackerKind::uniform_box;
  Scenario base = build_scenario(cfg);

  std::vector<SweepRow> rows;
  for (std::size_t i = 0; i < std::size(kLq); ++i) {
    const double lq = kLq[i];
    Scenario s = base;
    s.channel.link_quality_db = lq;
    s.seed = derive_stream_seed(cfg.seed, i);
    const WeightedChiSquareSpec h0 =
        spec_under_h0(s.system, s.legitimate, s.channel);
    s.threshold = threshold_for_far(h0, kFarTarget);

    SweepRow row;
    row.axis = "link_quality_db";
    row.value = lq;
    row.eps_th = s.threshold;
    row.far_analytic = analytic_far(h0, s.threshold);
    row.mdr_analytic = kNaN;  // randomized attacker position
    row.far_empirical = kNaN;
    row.mdr_empirical = kNaN;
    row.ci_far = kNaN;
    row.ci_mdr = kNaN;
    row.trials = 0;
    row.seed = s.seed;
    if (want_empirical(cfg)) fill_empirical(&row, run_trials(s));
    summarize_row(row);
    rows.push_back(row);

    if (!want_empirical(cfg)) continue;

    // Distance-gate baseline: per-anchor |measured - enrolled| test with the
    // gate width set for the same per-anchor false-alarm target; the row
    // reports the best (lowest-MDR) anchor.
    const std::vector<double> tau =
        baseline_thresholds(s.channel, s.legitimate, kFarTarget);
    const BaselineRates bl = run_baseline_trials(s, tau);
    std::size_t best = 0;
    for (std::size_t a = 1; a < bl.mdr_per_anchor.size(); ++a)
      if (bl.mdr_per_anchor[a] < bl.mdr_per_anchor[best]) best = a;
    const double far = bl.far_per_anchor[best];
    const double mdr = bl.mdr_per_anchor[best];
    SweepRow brow;
    brow.axis = "link_quality_db:baseline_min";
    brow.value = lq;
    brow.eps_th = tau[best];
    brow.far_analytic = kFarTarget;  // exact by construction of the gate
    brow.mdr_analytic = kNaN;
    brow.far_empirical = far;
    brow.mdr_empirical = mdr;
    brow.ci_far =
        1.96 * std::sqrt(far * (1.0 - far) / double(bl.trials_h0));
    brow.ci_mdr =
        1.96 * std::sqrt(mdr * (1.0 - mdr) / double(bl.trials_h1));
    brow.trials = bl.trials_h0;
    brow.seed = bl.seed;
    summarize_row(brow);
    rows.push_back(brow);
  }
  return rows;
}

// fig4: missed-detection rate against attacker distance (uniform on a circle
// of radius R around the enrolled position) for link qualities 0 and 20 dB,
// at a threshold fixed once from the 0 dB null law at a 1% false-alarm
// target.
std::vector<SweepRow> fig4_rows(const ExperimentConfig& c) {
  static const double kRadii[] = {1, 2, 3, 5, 7, 10, 15, 20, 30, 50};
  static const double kLq[] = {0.0, 20.0};

  ExperimentConfig cfg = c;
  cfg.attacker.kind = AttackerKind::circle;
  Scenario base = build_scenario(cfg);

  ChannelParams ch0 = base.channel;
  ch0.link_quality_db = 0.0;
  const double eps =
      threshold_for_far(spec_under_h0(base.system, base.legitimate, ch0), 0.01);

  std::vector<SweepRow> rows;
  for (std::size_t g = 0; g < std::size(kLq); ++g) {
    Scenario tmpl = base;
    tmpl.channel.link_quality_db = kLq[g];
    tmpl.threshold = eps;
    tmpl.seed = derive_stream_seed(cfg.seed, g);
    std::ostringstream axis;
    axis << "radius_R[lq=" << kLq[g] << "]";

    const WeightedChiSquareSpec h0 =
        spec_under_h0(tmpl.system, tmpl.legitimate, tmpl.channel);
    const double far_analytic = analytic_far(h0, eps);

    std::vector<ErrorRates> rates;
    if (want_empirical(cfg))
      rates = sweep(tmpl, SweepAxis::radius_r,
                    std::vector<double>(std::begin(kRadii), std::end(kRadii)));

    for (std::size_t i = 0; i < std::size(kRadii); ++i) {
      SweepRow row;
      row.axis = axis.str();
      row.value = kRadii[i];
      row.eps_th = eps;
      row.far_analytic = far_analytic;
      row.mdr_analytic = kNaN;  // randomized attacker position
      row.far_empirical = kNaN;
      row.mdr_empirical = kNaN;
      row.ci_far = kNaN;
      row.ci_mdr = kNaN;
      row.trials = 0;
      row.seed = tmpl.seed;
      if (want_empirical(cfg)) fill_empirical(&row, rates[i]);
      summarize_row(row);
      rows.push_back(std::move(row));
    }
  }
  return rows;
}

// fig5: ROC curves for attacker offsets (1,1) m and (2,2) m, three- and
// five-anchor geometries, link qualities 0 and 10 dB.  Eight curves; each
// goes to its own file when an output path is set, or to stdout as
// '# curve:'-separated blocks.
void run_fig5(const ExperimentConfig& c, std::ostream* sink) {
  static const Vec2 kLocs[] = {{1.0, 1.0}, {2.0, 2.0}};
  static const int kAnchors[] = {3, 5};
  static const double kLq[] = {0.0, 10.0};

  std::ostringstream combined;
  std::size_t curve_index = 0;
  for (int n : kAnchors) {
    for (const Vec2& loc : kLocs) {
      for (double lq : kLq) {
        ExperimentConfig cfg = c;
        cfg.num_anchors = n;
        cfg.attacker.kind = AttackerKind::fixed;
        cfg.attacker.point = loc;
        cfg.channel.link_quality_db = lq;
        Scenario scenario = build_scenario(cfg);
        scenario.seed = derive_stream_seed(c.seed, 100 + curve_index);

        const WeightedChiSquareSpec h0 =
            spec_under_h0(scenario.system, scenario.legitimate,
                          scenario.channel);
        const std::vector<double> grid = c.threshold_grid.empty()
                                             ? default_threshold_grid(h0)
                                             : c.threshold_grid;

        std::ostringstream text;
        bool wrote_header = false;
        auto emit = [&](const RocCurve& curve, std::uint64_t seed) {
          if (wrote_header)
            append_roc_csv(text, curve, seed);
          else
            write_roc_csv(text, curve, seed);
          wrote_header = true;
          summarize_curve(curve, seed);
        };

        std::ostringstream tag;
        tag << "_L" << n << "_loc" << loc.x << "x" << loc.y << "_lq" << lq;
        std::cerr << "fig5 curve L=" << n << " loc=(" << loc.x << "," << loc.y
                  << ") lq=" << lq << "\n";

        if (want_analytic(cfg)) {
          const WeightedChiSquareSpec h1 =
              spec_under_h1(scenario.system, scenario.legitimate,
                            scenario.attacker.point, scenario.channel);
          emit(analytic_roc(h0, h1, grid), 0);
        }
        if (want_empirical(cfg))
          emit(empirical_roc(scenario, grid), scenario.seed);

        if (c.out.empty()) {
          combined << "# curve: L=" << n << " loc=(" << loc.x << "," << loc.y
                   << ") lq=" << lq << "\n"
                   << text.str();
        } else {
          const std::string path = with_suffix(c.out, tag.str());
          write_text_output(path, text.str(), sink);
          write_gnuplot_roc_stub(c, path);
        }
        ++curve_index;
      }
    }
  }
  if (c.out.empty()) write_text_output("", combined.str(), sink);
}

}  // namespace

Command parse_command(const std::string& name) {
  if (name == "analytic") return Command::analytic;
  if (name == "simulate") return Command::simulate;
  if (name == "roc") return Command::roc;
  if (name == "sweep") return Command::sweep;
  if (name == "figure") return Command::figure;
  throw std::invalid_argument("unknown command '" + name + "'");
}

std::vector<double> default_threshold_grid(
    const WeightedChiSquareSpec& spec_h0) {
  constexpr int kPoints = 25;
  constexpr double kHi = 0.99;   // most permissive false-alarm target
  constexpr double kLo = 1e-4;   // strictest false-alarm target
  std::vector<double> grid;
  grid.reserve(kPoints);
  for (int k = 0; k < kPoints; ++k) {
    const double pfa =
        kHi * std::pow(kLo / kHi, double(k) / double(kPoints - 1));
    const double t = threshold_for_far(spec_h0, pfa);
    if (!grid.empty() && t <= grid.back()) continue;
    grid.push_back(t);
  }
  return grid;
}

void run_experiment(const ExperimentConfig& config, Command command,
                    std::ostream* stdout_sink) {
  switch (command) {
    case Command::analytic: {
      const std::vector<SweepRow> rows = point_rows(config, true);
      std::ostringstream text;
      write_sweep_csv(text, rows);
      write_text_output(config.out, text.str(), stdout_sink);
      write_gnuplot_sweep_stub(config, config.out);
      return;
    }
    case Command::simulate: {
      const std::vector<SweepRow> rows = point_rows(config, false);
      std::ostringstream text;
      write_sweep_csv(text, rows);
      write_text_output(config.out, text.str(), stdout_sink);
      write_gnuplot_sweep_stub(config, config.out);
      return;
    }
    case Command::roc:
      run_roc(config, stdout_sink);
      return;
    case Command::sweep: {
      const std::vector<SweepRow> rows = sweep_rows(config);
      std::ostringstream text;
      write_sweep_csv(text, rows);
      write_text_output(config.out, text.str(), stdout_sink);
      write_gnuplot_sweep_stub(config, config.out);
      return;
    }
    case Command::figure: {
      if (config.figure == "fig5") {
        run_fig5(config, stdout_sink);
        return;
      }
      std::vector<SweepRow> rows;
      if (config.figure == "fig2")
        rows = fig2_rows(config);
      else if (config.figure == "fig3")
        rows = fig3_rows(config);
      else if (config.figure == "fig4")
        rows = fig4_rows(config);
      else
        throw std::invalid_argument(
            "figure command requires figure = fig2 | fig3 | fig4 | fig5");
      std::ostringstream text;
      write_sweep_csv(text, rows);
      write_text_output(config.out, text.str(), stdout_sink);
      write_gnuplot_sweep_stub(config, config.out);
      return;
    }
  }
  throw std::invalid_argument("unhandled command");
}

}  // namespace uwauth
