// simulator.cpp -- Monte Carlo engine implementation.
#include "uwauth/simulator.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "uwauth/rng.hpp"

namespace uwauth {

namespace {

constexpr int kChunks = 256;  // fixed work partition, independent of threads
constexpr double kTwoPi = 6.283185307179586476925286766559;

std::uint64_t h0_stream(std::uint64_t seed) { return derive_stream_seed(seed, 0); }
std::uint64_t h1_stream(std::uint64_t seed) { return derive_stream_seed(seed, 1); }

Vec2 draw_attacker(const AttackerModel& model, Vec2 target, SplitMix64& rng) {
  switch (model.kind) {
    case AttackerKind::fixed:
      return model.point;
    case AttackerKind::uniform_box: {
      const double ux = rng.uniform01();
      const double uy = rng.uniform01();
      return {target.x + model.extent * (2.0 * ux - 1.0),
              target.y + model.extent * (2.0 * uy - 1.0)};
    }
    case AttackerKind::circle: {
      const double phi = kTwoPi * rng.uniform01();
      return {target.x + model.radius * std::cos(phi),
              target.y + model.radius * std::sin(phi)};
    }
  }
  throw std::logic_error("draw_attacker: unknown attacker kind");
}

// Executes fn(chunk_index, trial_begin, trial_end) over a fixed partition of
// [0, trials) into kChunks ranges, using up to `threads` workers.  The
// partition and all per-trial seeds are independent of the thread count, so
// any output written per chunk or per trial index is bit-reproducible.
template <typename Fn>
void parallel_chunks(std::uint64_t trials, int threads, Fn&& fn) {
  const std::uint64_t q = trials / kChunks;
  const std::uint64_t r = trials % kChunks;
  auto chunk_begin = [&](int c) {
    const std::uint64_t uc = static_cast<std::uint64_t>(c);
    return q * uc + std::min<std::uint64_t>(uc, r);
  };

  int n = threads > 0 ? threads
                      : static_cast<int>(std::thread::hardware_concurrency());
  n = std::clamp(n, 1, 64);
  if (trials < 8192) n = 1;

  if (n == 1) {
    for (int c = 0; c < kChunks; ++c) fn(c, chunk_begin(c), chunk_begin(c + 1));
    return;
  }

  std::atomic<int> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto worker = [&] {
    try {
      for (int c = next.fetch_add(1); c < kChunks; c = next.fetch_add(1))
        fn(c, chunk_begin(c), chunk_begin(c + 1));
    } catch (...) {
      std::lock_guard<std::mutex> lock(error_mutex);
      if (!error) error = std::current_exception();
      next.store(kChunks);
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

double legitimate_trial_ts(const Scenario& s, std::uint64_t trial) {
  const std::uint64_t seed = derive_trial_seed(h0_stream(s.seed), trial);
  const RangingSample m =
      sample_ranging(s.system, s.channel, s.legitimate.position, seed);
  return test_statistic(s.system, s.system.solve(m.measured), s.legitimate);
}

double attacker_trial_ts(const Scenario& s, std::uint64_t trial) {
  const std::uint64_t seed = derive_trial_seed(h1_stream(s.seed), trial);
  SplitMix64 pos_rng(seed);
  const Vec2 pos = draw_attacker(s.attacker, s.legitimate.position, pos_rng);
  const std::uint64_t noise_seed = mix64(seed ^ 0xA77AC3E1D2B4F685ULL);
  const RangingSample m = sample_ranging(s.system, s.channel, pos, noise_seed);
  return test_statistic(s.system, s.system.solve(m.measured), s.legitimate);
}

double binomial_halfwidth(double p, std::uint64_t n) {
  if (n == 0) return 0.0;
  return 1.96 * std::sqrt(p * (1.0 - p) / static_cast<double>(n));
}

std::uint64_t sweep_point_seed(std::uint64_t master, std::size_t index) {
  return derive_stream_seed(mix64(master ^ 0x53574545503132ULL),
                            static_cast<std::uint64_t>(index));
}

}  // namespace

void validate(const Scenario& scenario) {
  validate(scenario.channel);
  if (scenario.trials < 1)
    throw std::invalid_argument("Scenario: trials must be >= 1");
  if (!(scenario.threshold >= 0.0))
    throw std::invalid_argument("Scenario: threshold must be >= 0");
  if (scenario.threads < 0)
    throw std::invalid_argument("Scenario: threads must be >= 0");
  switch (scenario.attacker.kind) {
    case AttackerKind::fixed:
      break;
    case AttackerKind::uniform_box:
      if (!(scenario.attacker.extent > 0.0))
        throw std::invalid_argument("Scenario: attacker box extent must be > 0");
      break;
    case AttackerKind::circle:
      if (!(scenario.attacker.radius > 0.0))
        throw std::invalid_argument("Scenario: attacker circle radius must be > 0");
      break;
  }
  if (scenario.legitimate.distances.size() !=
      static_cast<std::size_t>(scenario.system.size()))
    throw std::invalid_argument(
        "Scenario: profile/anchor count mismatch");
}

ErrorRates run_trials(const Scenario& scenario) {
  validate(scenario);
  std::vector<std::uint64_t> h0_rejects(kChunks, 0), h1_accepts(kChunks, 0);
  parallel_chunks(
      scenario.trials, scenario.threads,
      [&](int chunk, std::uint64_t begin, std::uint64_t end) {
        std::uint64_t rej = 0, acc = 0;
        for (std::uint64_t t = begin; t < end; ++t) {
          if (legitimate_trial_ts(scenario, t) > scenario.threshold) ++rej;
          if (attacker_trial_ts(scenario, t) <= scenario.threshold) ++acc;
        }
        h0_rejects[static_cast<std::size_t>(chunk)] = rej;
        h1_accepts[static_cast<std::size_t>(chunk)] = acc;
      });

  std::uint64_t rejects = 0, accepts = 0;
  for (int c = 0; c < kChunks; ++c) {
    rejects += h0_rejects[static_cast<std::size_t>(c)];
    accepts += h1_accepts[static_cast<std::size_t>(c)];
  }

  ErrorRates rates;
  rates.trials_h0 = scenario.trials;
  rates.trials_h1 = scenario.trials;
  rates.seed = scenario.seed;
  rates.empirical_far =
      static_cast<double>(rejects) / static_cast<double>(scenario.trials);
  rates.empirical_mdr =
      static_cast<double>(accepts) / static_cast<double>(scenario.trials);
  rates.ci_far = binomial_halfwidth(rates.empirical_far, rates.trials_h0);
  rates.ci_mdr = binomial_halfwidth(rates.empirical_mdr, rates.trials_h1);
  return rates;
}

StatisticSamples simulate_statistics(const Scenario& scenario) {
  validate(scenario);
  StatisticSamples samples;
  samples.seed = scenario.seed;
  samples.h0.resize(scenario.trials);
  samples.h1.resize(scenario.trials);
  parallel_chunks(scenario.trials, scenario.threads,
                  [&](int, std::uint64_t begin, std::uint64_t end) {
                    for (std::uint64_t t = begin; t < end; ++t) {
                      samples.h0[t] = legitimate_trial_ts(scenario, t);
                      samples.h1[t] = attacker_trial_ts(scenario, t);
                    }
                  });
  return samples;
}

BaselineRates run_baseline_trials(const Scenario& scenario,
                                  const std::vector<double>& tau) {
  validate(scenario);
  const std::size_t L = static_cast<std::size_t>(scenario.system.size());
  if (tau.size() != L)
    throw std::invalid_argument("run_baseline_trials: tau size != anchor count");
  for (double t : tau)
    if (!(t >= 0.0))
      throw std::invalid_argument("run_baseline_trials: tau must be >= 0");

  std::vector<std::vector<std::uint64_t>> fa(kChunks,
                                             std::vector<std::uint64_t>(L, 0));
  std::vector<std::vector<std::uint64_t>> md(kChunks,
                                             std::vector<std::uint64_t>(L, 0));
  parallel_chunks(
      scenario.trials, scenario.threads,
      [&](int chunk, std::uint64_t begin, std::uint64_t end) {
        auto& fa_c = fa[static_cast<std::size_t>(chunk)];
        auto& md_c = md[static_cast<std::size_t>(chunk)];
        for (std::uint64_t t = begin; t < end; ++t) {
          const std::uint64_t s0 = derive_trial_seed(h0_stream(scenario.seed), t);
          const RangingSample m0 = sample_ranging(
              scenario.system, scenario.channel, scenario.legitimate.position, s0);
          for (std::size_t i = 0; i < L; ++i)
            if (std::fabs(m0.measured[i] - scenario.legitimate.distances[i]) >
                tau[i])
              ++fa_c[i];

          const std::uint64_t s1 = derive_trial_seed(h1_stream(scenario.seed), t);
          SplitMix64 pos_rng(s1);
          const Vec2 pos =
              draw_attacker(scenario.attacker, scenario.legitimate.position, pos_rng);
          const std::uint64_t noise_seed = mix64(s1 ^ 0xA77AC3E1D2B4F685ULL);
          const RangingSample m1 =
              sample_ranging(scenario.system, scenario.channel, pos, noise_seed);
          for (std::size_t i = 0; i < L; ++i)
            if (std::fabs(m1.measured[i] - scenario.legitimate.distances[i]) <=
                tau[i])
              ++md_c[i];
        }
      });

  BaselineRates rates;
  rates.trials_h0 = scenario.trials;
  rates.trials_h1 = scenario.trials;
  rates.seed = scenario.seed;
  rates.far_per_anchor.assign(L, 0.0);
  rates.mdr_per_anchor.assign(L, 0.0);
  for (int c = 0; c < kChunks; ++c)
    for (std::size_t i = 0; i < L; ++i) {
      rates.far_per_anchor[i] += static_cast<double>(fa[static_cast<std::size_t>(c)][i]);
      rates.mdr_per_anchor[i] += static_cast<double>(md[static_cast<std::size_t>(c)][i]);
    }
  for (std::size_t i = 0; i < L; ++i) {
    rates.far_per_anchor[i] /= static_cast<double>(scenario.trials);
    rates.mdr_per_anchor[i] /= static_cast<double>(scenario.trials);
  }
  return rates;
}

RocCurve empirical_roc(const Scenario& scenario,
                       const std::vector<double>& threshold_grid) {
  if (threshold_grid.empty())
    throw std::invalid_argument("empirical_roc: empty threshold grid");
  for (std::size_t i = 1; i < threshold_grid.size(); ++i)
    if (!(threshold_grid[i] > threshold_grid[i - 1]))
      throw std::invalid_argument(
          "empirical_roc: thresholds must be strictly increasing");

  const StatisticSamples samples = simulate_statistics(scenario);
  const double n = static_cast<double>(scenario.trials);

  RocCurve curve;
  curve.provenance = "empirical";
  curve.fingerprint = scenario_fingerprint(scenario);
  curve.points.reserve(threshold_grid.size());
  for (double eps : threshold_grid) {
    RocPoint p;
    p.threshold = eps;
    std::uint64_t fa = 0, det = 0;
    for (double ts : samples.h0)
      if (ts > eps) ++fa;
    for (double ts : samples.h1)
      if (ts > eps) ++det;
    p.pfa = static_cast<double>(fa) / n;
    p.pd = static_cast<double>(det) / n;
    curve.points.push_back(p);
  }
  return curve;
}

std::string to_string(SweepAxis axis) {
  switch (axis) {
    case SweepAxis::link_quality_db:
      return "link_quality_db";
    case SweepAxis::radius_r:
      return "radius_R";
    case SweepAxis::threshold:
      return "threshold";
  }
  throw std::logic_error("to_string: unknown sweep axis");
}

std::vector<ErrorRates> sweep(const Scenario& scenario_template, SweepAxis axis,
                              const std::vector<double>& values) {
  if (values.empty())
    throw std::invalid_argument("sweep: values must be non-empty");
  for (double v : values)
    if (!std::isfinite(v))
      throw std::invalid_argument("sweep: values must be finite");

  std::vector<ErrorRates> out;
  out.reserve(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    Scenario point = scenario_template;
    switch (axis) {
      case SweepAxis::link_quality_db:
        point.channel.link_quality_db = values[i];
        break;
      case SweepAxis::radius_r:
        if (point.attacker.kind != AttackerKind::circle)
          throw std::invalid_argument(
              "sweep: radius_R axis requires a circle attacker model");
        point.attacker.radius = values[i];
        break;
      case SweepAxis::threshold:
        point.threshold = values[i];
        break;
    }
    point.seed = sweep_point_seed(scenario_template.seed, i);
    out.push_back(run_trials(point));
  }
  return out;
}

std::uint64_t scenario_fingerprint(const Scenario& scenario) {
  std::ostringstream os;
  os.precision(17);
  os << scenario.channel.freq_khz << '|' << scenario.channel.spreading << '|'
     << scenario.channel.sound_speed << '|' << scenario.channel.tx_power << '|'
     << scenario.channel.link_quality_db << '|'
     << scenario.channel.processing_gain << '|' << scenario.channel.sigma_scale
     << '|';
  for (const Vec2& a : scenario.system.anchors()) os << a.x << ',' << a.y << ';';
  os << '|' << scenario.legitimate.position.x << ','
     << scenario.legitimate.position.y << '|'
     << static_cast<int>(scenario.attacker.kind) << '|'
     << scenario.attacker.point.x << ',' << scenario.attacker.point.y << '|'
     << scenario.attacker.extent << '|' << scenario.attacker.radius << '|'
     << scenario.threshold << '|' << scenario.trials << '|' << scenario.seed;
  const std::string s = os.str();
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char ch : s) {
    h ^= ch;
    h *= 1099511628211ULL;
  }
  return h;
}

}  // namespace uwauth
