// analytic.cpp -- weighted noncentral chi-square laws of the authentication
// statistic and their CDF evaluators (Imhof inversion, Laguerre series).
#include "uwauth/analytic.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <sstream>
#include <stdexcept>

#include "uwauth/errors.hpp"
#include "uwauth/special_functions.hpp"

namespace uwauth {

namespace {

constexpr double kPi = 3.1415926535897932384626433832795;
constexpr double kEps = 2.2204460492503131e-16;

}  // namespace

void validate(const WeightedChiSquareSpec& spec) {
  if (spec.weights.empty())
    throw std::invalid_argument("WeightedChiSquareSpec: needs at least one term");
  if (spec.weights.size() != spec.noncentrality.size())
    throw std::invalid_argument(
        "WeightedChiSquareSpec: weights and noncentrality differ in length");
  for (double g : spec.weights)
    if (!(g > 0.0) || !std::isfinite(g))
      throw std::invalid_argument(
          "WeightedChiSquareSpec: weights must be positive and finite");
  for (double l : spec.noncentrality)
    if (!(l >= 0.0) || !std::isfinite(l))
      throw std::invalid_argument(
          "WeightedChiSquareSpec: noncentralities must be >= 0 and finite");
}

double mean(const WeightedChiSquareSpec& spec) {
  validate(spec);
  double m = 0.0;
  for (std::size_t i = 0; i < spec.weights.size(); ++i)
    m += spec.weights[i] * (1.0 + spec.noncentrality[i]);
  return m;
}

double variance(const WeightedChiSquareSpec& spec) {
  validate(spec);
  double v = 0.0;
  for (std::size_t i = 0; i < spec.weights.size(); ++i)
    v += 2.0 * spec.weights[i] * spec.weights[i] *
         (1.0 + 2.0 * spec.noncentrality[i]);
  return v;
}

// --- Statistic laws ---------------------------------------------------------

WeightedChiSquareSpec spec_under_h0(const LocalizationSystem& system,
                                    const LegitimateProfile& profile,
                                    const ChannelParams& params) {
  (void)system;
  WeightedChiSquareSpec spec;
  for (double d : profile.distances) {
    const double s = ranging_sigma(params, d);
    if (!(s > 0.0))
      throw std::invalid_argument(
          "spec_under_h0: ranging noise must be positive (sigma_scale == 0 "
          "has no chi-square law)");
    spec.weights.push_back(4.0 * d * d * s * s);
    spec.noncentrality.push_back(0.0);
  }
  return spec;
}

WeightedChiSquareSpec spec_under_h1(const LocalizationSystem& system,
                                    const LegitimateProfile& profile,
                                    Vec2 attacker_pos,
                                    const ChannelParams& params) {
  const std::vector<double> de = system.true_distances(attacker_pos);
  WeightedChiSquareSpec spec;
  for (std::size_t i = 0; i < de.size(); ++i) {
    const double s = ranging_sigma(params, de[i]);
    if (!(s > 0.0))
      throw std::invalid_argument(
          "spec_under_h1: ranging noise must be positive");
    const double gamma = 4.0 * de[i] * de[i] * s * s;
    const double delta =
        de[i] * de[i] - profile.distances[i] * profile.distances[i];
    spec.weights.push_back(gamma);
    spec.noncentrality.push_back(delta * delta / gamma);
  }
  return spec;
}

namespace {

// Shared core of the estimator-chain laws.  The linearized statistic is
// (n + c)' M (n + c) with n standard normal, M = D P D, c = D^{-1} delta;
// eigendecompose M and keep the (structurally two) nonzero eigenvalues.
WeightedChiSquareSpec estimator_spec(const LocalizationSystem& system,
                                     const std::vector<double>& noise_dist,
                                     const std::vector<double>& delta,
                                     const ChannelParams& params) {
  const int L = system.size();
  Eigen::VectorXd dscale(L), c(L);
  for (int i = 0; i < L; ++i) {
    const double s = ranging_sigma(params, noise_dist[i]);
    if (!(s > 0.0))
      throw std::invalid_argument(
          "estimator_spec: ranging noise must be positive");
    dscale(i) = 2.0 * noise_dist[i] * s;
    c(i) = delta[i] / dscale(i);
  }

  const Eigen::MatrixXd projector =
      system.statistic_lift() * system.position_solver();
  const Eigen::MatrixXd m =
      dscale.asDiagonal() * projector * dscale.asDiagonal();

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(m);
  const double wmax = eig.eigenvalues().maxCoeff();

  WeightedChiSquareSpec spec;
  for (int j = 0; j < L; ++j) {
    const double w = eig.eigenvalues()(j);
    if (w > 1e-12 * wmax) {
      const double mu = eig.eigenvectors().col(j).dot(c);
      spec.weights.push_back(w);
      spec.noncentrality.push_back(mu * mu);
    }
  }
  return spec;
}

}  // namespace

WeightedChiSquareSpec estimator_spec_under_h0(const LocalizationSystem& system,
                                              const LegitimateProfile& profile,
                                              const ChannelParams& params) {
  const std::vector<double> zero(profile.distances.size(), 0.0);
  return estimator_spec(system, profile.distances, zero, params);
}

WeightedChiSquareSpec estimator_spec_under_h1(const LocalizationSystem& system,
                                              const LegitimateProfile& profile,
                                              Vec2 attacker_pos,
                                              const ChannelParams& params) {
  const std::vector<double> de = system.true_distances(attacker_pos);
  std::vector<double> delta(de.size());
  for (std::size_t i = 0; i < de.size(); ++i)
    delta[i] =
        de[i] * de[i] - profile.distances[i] * profile.distances[i];
  return estimator_spec(system, de, delta, params);
}

// --- Imhof characteristic-function inversion --------------------------------

namespace {

// Gauss-Kronrod 15(7) nodes and weights on [-1, 1] (QUADPACK values).
constexpr double kXgk[8] = {
    0.9914553711208126, 0.9491079123427585, 0.8648644233597691,
    0.7415311855993944, 0.5860872354676911, 0.4058451513773972,
    0.2077849550078985, 0.0};
constexpr double kWgk[8] = {
    0.0229353220105292, 0.0630920926299786, 0.1047900103222502,
    0.1406532597155259, 0.1690047266392679, 0.1903505780647854,
    0.2044329400752989, 0.2094821410847278};
constexpr double kWg[4] = {
    0.1294849661688697, 0.2797053914892767, 0.3818300505051189,
    0.4179591836734694};

struct ImhofIntegrand {
  const WeightedChiSquareSpec& spec;
  double x;

  // sin(theta(u)) / (u * rho(u)), with the u -> 0 limit handled explicitly.
  double operator()(double u) const {
    if (u == 0.0) {
      double lim = -0.5 * x;
      for (std::size_t i = 0; i < spec.weights.size(); ++i)
        lim += 0.5 * spec.weights[i] * (1.0 + spec.noncentrality[i]);
      return lim;
    }
    double theta = -0.5 * x * u;
    double logrho = 0.0;
    for (std::size_t i = 0; i < spec.weights.size(); ++i) {
      const double gu = spec.weights[i] * u;
      const double gu2 = gu * gu;
      theta += 0.5 * (std::atan(gu) + spec.noncentrality[i] * gu / (1.0 + gu2));
      logrho += 0.25 * std::log1p(gu2) +
                0.5 * spec.noncentrality[i] * gu2 / (1.0 + gu2);
    }
    return std::sin(theta) * std::exp(-logrho) / u;
  }
};

struct Panel {
  double a, b, value, error;
};

Panel evaluate_panel(const ImhofIntegrand& f, double a, double b) {
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  double kron = kWgk[7] * f(c);
  double gauss = kWg[3] * f(c);
  for (int i = 0; i < 7; ++i) {
    const double fa = f(c - h * kXgk[i]);
    const double fb = f(c + h * kXgk[i]);
    kron += kWgk[i] * (fa + fb);
    if (i % 2 == 1) gauss += kWg[i / 2] * (fa + fb);
  }
  return {a, b, kron * h, std::fabs(kron - gauss) * h};
}

// Phase theta(u) of the Imhof integrand and its derivative.  Past the point
// where phase_slack(u) is small, theta'(u) is pinned inside
// [-x/2 - slack, -x/2 + slack], so the phase decreases strictly and the
// integrand's zeros can be tracked one by one.
struct ImhofPhase {
  const WeightedChiSquareSpec& spec;
  double x;

  double theta(double u) const {
    double t = -0.5 * x * u;
    for (std::size_t i = 0; i < spec.weights.size(); ++i) {
      const double gu = spec.weights[i] * u;
      t += 0.5 * (std::atan(gu) +
                  spec.noncentrality[i] * gu / (1.0 + gu * gu));
    }
    return t;
  }

  double dtheta(double u) const {
    double d = -0.5 * x;
    for (std::size_t i = 0; i < spec.weights.size(); ++i) {
      const double g = spec.weights[i];
      const double gu2 = g * u * g * u;
      const double t = 1.0 + gu2;
      d += 0.5 * (g / t + spec.noncentrality[i] * g * (1.0 - gu2) / (t * t));
    }
    return d;
  }
};

// Upper bound on |theta'(u) + x/2|, decreasing in u.
double phase_slack(const WeightedChiSquareSpec& spec, double u) {
  double s = 0.0;
  for (std::size_t i = 0; i < spec.weights.size(); ++i) {
    const double g = spec.weights[i];
    s += 0.5 * g * (1.0 + spec.noncentrality[i]) / (1.0 + g * u * g * u);
  }
  return s;
}

std::uint64_t fnv1a(const void* data, std::size_t n, std::uint64_t h) {
  const unsigned char* p = static_cast<const unsigned char*>(data);
  for (std::size_t i = 0; i < n; ++i) {
    h ^= p[i];
    h *= 1099511628211ULL;
  }
  return h;
}

}  // namespace

double cdf_imhof(const WeightedChiSquareSpec& spec, double x,
                 const ImhofParams& params) {
  validate(spec);
  if (!(x >= 0.0))
    throw std::invalid_argument("cdf_imhof: x must be >= 0");
  if (!(params.tolerance > 0.0) || params.max_panels < 16)
    throw std::invalid_argument("cdf_imhof: invalid parameters");
  if (x == 0.0) return 0.0;

  const double tol = std::max(params.tolerance, 1e-13);
  double gmax = 0.0;
  double lambda_sum = 0.0;
  for (std::size_t i = 0; i < spec.weights.size(); ++i) {
    gmax = std::max(gmax, spec.weights[i]);
    lambda_sum += spec.noncentrality[i];
  }

  // Region split: beyond u0 the phase derivative sits within 10% of -x/2,
  // so the integrand oscillates regularly and its lobes form an alternating
  // series.  [0, u0] is handled by adaptive panels, the rest by lobe
  // summation.  phase_slack decays like 1/u^2, so u0 is always finite.
  double u0 = 0.5 / gmax;
  while (std::isfinite(u0) && phase_slack(spec, u0) > 0.05 * x) u0 *= 2.0;
  if (!std::isfinite(u0)) {
    std::ostringstream os;
    os << "cdf_imhof: could not isolate the oscillatory tail (x = " << x
       << "); the spec may be degenerate";
    throw NumericalError(os.str());
  }
  const double upper = u0;

  // Initial panel layout: density proportional to a crude phase estimate,
  // mixing linear spacing (the oscillation rate is asymptotically uniform in
  // u) with geometric spacing near zero (arctan/noncentral structure lives
  // at u <~ 1/weight).
  const double phase_est = 0.5 * x * upper + 0.25 * lambda_sum +
                           0.8 * static_cast<double>(spec.weights.size()) + 2.0;
  const int n0 = std::clamp(static_cast<int>(phase_est / 3.0), 64, 16384);
  std::vector<double> edges;
  edges.reserve(static_cast<std::size_t>(n0) + 2);
  edges.push_back(0.0);
  const double u_min = std::min(upper * 1e-9, 0.01 / gmax);
  const int n_geo = n0 / 4;
  const double ratio = std::pow(upper / u_min, 1.0 / n_geo);
  double ug = u_min;
  for (int i = 0; i < n_geo; ++i) {
    edges.push_back(ug);
    ug *= ratio;
  }
  const int n_lin = n0 - n_geo;
  for (int i = 1; i < n_lin; ++i)
    edges.push_back(upper * static_cast<double>(i) / n_lin);
  edges.push_back(upper);
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());

  const ImhofIntegrand f{spec, x};
  auto worse = [](const Panel& p, const Panel& q) { return p.error < q.error; };
  std::priority_queue<Panel, std::vector<Panel>, decltype(worse)> queue(worse);
  double err_sum = 0.0;
  int panels_used = 0;
  for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
    Panel p = evaluate_panel(f, edges[i], edges[i + 1]);
    err_sum += p.error;
    queue.push(p);
    ++panels_used;
  }

  while (err_sum > 0.4 * tol) {
    if (panels_used >= params.max_panels) {
      std::ostringstream os;
      os << "cdf_imhof: quadrature did not converge (x = " << x
         << ", head region [0, " << upper << "], panels = " << panels_used
         << ", residual error " << err_sum << " > " << 0.4 * tol << ")";
      throw NumericalError(os.str());
    }
    Panel worst = queue.top();
    queue.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    if (!(mid > worst.a && mid < worst.b)) {
      std::ostringstream os;
      os << "cdf_imhof: panel at [" << worst.a << ", " << worst.b
         << "] cannot be subdivided further (x = " << x << ")";
      throw NumericalError(os.str());
    }
    Panel left = evaluate_panel(f, worst.a, mid);
    Panel right = evaluate_panel(f, mid, worst.b);
    err_sum += left.error + right.error - worst.error;
    queue.push(left);
    queue.push(right);
    panels_used += 2;
  }

  // Deterministic final summation: order panels by interval start.
  std::vector<Panel> final_panels;
  final_panels.reserve(queue.size());
  while (!queue.empty()) {
    final_panels.push_back(queue.top());
    queue.pop();
  }
  std::sort(final_panels.begin(), final_panels.end(),
            [](const Panel& p, const Panel& q) { return p.a < q.a; });
  double integral = 0.0;
  for (const Panel& p : final_panels) integral += p.value;

  // Tail: sum the integral lobe by lobe between consecutive zeros of the
  // phase.  The lobes alternate in sign with decreasing magnitude, and
  // repeated averaging of the partial sums (Euler-style acceleration)
  // converges geometrically even when the raw envelope decays slowly
  // (~u^{-1-L/2}, painfully slow for one or two terms).
  const ImhofPhase ph{spec, x};
  auto next_zero = [&](double lo, double tgt) {
    // Safeguarded Newton for theta(u) = tgt, u > lo.  |theta'| >= 0.45 x
    // by construction of u0, so the bracket below always contains the zero.
    double hi = lo + 2.3 * kPi / x;
    double v = lo + (ph.theta(lo) - tgt) / (0.5 * x);
    v = std::clamp(v, lo, hi);
    for (int it = 0; it < 80; ++it) {
      const double err = ph.theta(v) - tgt;
      if (std::abs(err) < 1e-9) return v;
      if (err > 0.0)
        lo = v;
      else
        hi = v;
      const double step = err / ph.dtheta(v);
      v -= step;
      if (!(v > lo && v < hi)) v = 0.5 * (lo + hi);
    }
    std::ostringstream os;
    os << "cdf_imhof: failed to locate a phase zero near u = " << v
       << " (x = " << x << ")";
    throw NumericalError(os.str());
  };

  double tail = 0.0;
  {
    double zero = u0;
    double target = std::floor(ph.theta(u0) / kPi) * kPi;
    double partial = 0.0;
    std::vector<double> prev_row, row;
    double estimate = 0.0;
    double prev_estimate = 0.0;
    int stable = 0;
    bool converged = false;
    const int max_lobes = 20000;
    const int max_depth = 30;
    for (int k = 0; k < max_lobes; ++k) {
      const double z1 = next_zero(zero, target);
      const Panel lobe = evaluate_panel(f, zero, z1);
      partial += lobe.value;
      zero = z1;
      target -= kPi;

      row.clear();
      row.push_back(partial);
      for (std::size_t j = 1;
           j <= prev_row.size() && j < static_cast<std::size_t>(max_depth); ++j)
        row.push_back(0.5 * (row[j - 1] + prev_row[j - 1]));
      estimate = row.back();
      prev_row = row;

      const bool settled =
          k >= 12 && std::abs(estimate - prev_estimate) <= 0.02 * tol;
      stable = settled ? stable + 1 : 0;
      prev_estimate = estimate;
      if (stable >= 3 ||
          std::abs(lobe.value) < 1e-18 * (1.0 + std::abs(partial))) {
        converged = true;
        break;
      }
    }
    if (!converged) {
      std::ostringstream os;
      os << "cdf_imhof: oscillatory tail did not settle within " << 20000
         << " lobes (x = " << x << ", reached u = " << zero << ")";
      throw NumericalError(os.str());
    }
    tail = estimate;
  }
  integral += tail;

  double cdf = 0.5 - integral / kPi;
  if (cdf < -1e-6 || cdf > 1.0 + 1e-6) {
    std::ostringstream os;
    os << "cdf_imhof: result " << cdf << " clamped to [0,1] (x = " << x << ")";
    emit_warning(os.str());
  }
  return std::clamp(cdf, 0.0, 1.0);
}

double cdf_imhof(const WeightedChiSquareSpec& spec, double x, double tol) {
  ImhofParams p;
  p.tolerance = tol;
  return cdf_imhof(spec, x, p);
}

// --- Laguerre series ---------------------------------------------------------

double cdf_laguerre(const WeightedChiSquareSpec& spec, double x,
                    const LaguerreSeriesParams& params) {
  validate(spec);
  if (!(x >= 0.0))
    throw std::invalid_argument("cdf_laguerre: x must be >= 0");
  if (params.max_terms < 8 || !(params.tolerance > 0.0) ||
      params.beta < 0.0 || params.mu0 < 0.0)
    throw std::invalid_argument("cdf_laguerre: invalid parameters");
  if (x == 0.0) return 0.0;

  const std::size_t L = spec.weights.size();
  const double nu = 0.5 * static_cast<double>(L);
  double gmax = 0.0;
  for (double g : spec.weights) gmax = std::max(gmax, g);

  // Effective gamma-kernel scale theta = 2*beta*mu0/(nu+1); the defaults pick
  // theta = 1.5*gmax, which satisfies the convergence condition theta > gmax
  // for every spec.
  const double mu0 = (params.mu0 > 0.0) ? params.mu0 : nu + 1.0 - 1.0 / 64.0;
  const double beta =
      (params.beta > 0.0) ? params.beta : 0.75 * gmax * (nu + 1.0) / mu0;
  const double theta = 2.0 * beta * mu0 / (nu + 1.0);
  if (!(theta > gmax)) {
    std::ostringstream os;
    os << "cdf_laguerre: series diverges for effective scale " << theta
       << " <= max weight " << gmax
       << " (beta/mu0 too small); use cdf_imhof or larger beta";
    throw NumericalError(os.str());
  }

  const double tol = params.tolerance;
  const int max_terms = params.max_terms;

  // Mixture coefficients g_k of the expansion about Gamma(nu, theta):
  //   xi_m = sum_i [ t_i^m / 2 - m*(lambda_i*gamma_i/theta)*t_i^(m-1) ],
  //   g_0 = 1,  g_k = (1/k) * sum_{j<k} g_j * xi_{k-j},
  // with t_i = 1 - 2*gamma_i/theta (|t_i| < 1 iff theta > gamma_i).
  std::vector<double> t(L), a(L), tpow(L, 1.0);
  for (std::size_t i = 0; i < L; ++i) {
    t[i] = 1.0 - 2.0 * spec.weights[i] / theta;
    a[i] = spec.noncentrality[i] * spec.weights[i] / theta;
  }
  std::vector<double> xi(static_cast<std::size_t>(max_terms) + 1, 0.0);
  for (int m = 1; m <= max_terms; ++m) {
    double v = 0.0;
    for (std::size_t i = 0; i < L; ++i) {
      v += 0.5 * tpow[i] * t[i] - static_cast<double>(m) * a[i] * tpow[i];
      // tpow[i] currently holds t_i^(m-1); advance after use.
    }
    xi[static_cast<std::size_t>(m)] = v;
    for (std::size_t i = 0; i < L; ++i) tpow[i] *= t[i];
  }
  std::vector<double> g(static_cast<std::size_t>(max_terms) + 1, 0.0);
  g[0] = 1.0;
  for (int k = 1; k <= max_terms; ++k) {
    double v = 0.0;
    for (int j = 0; j < k; ++j)
      v += g[static_cast<std::size_t>(j)] * xi[static_cast<std::size_t>(k - j)];
    g[static_cast<std::size_t>(k)] = v / static_cast<double>(k);
  }

  // Series: F(x) = P(nu, u) + u^nu e^-u * sum_m m! g_{m+1} L_m^(nu)(u) / Gamma(nu+m+1)
  // with u = x/theta.  Laguerre values are carried with a shared power-of-two
  // offset so intermediate growth cannot overflow.
  const double u = x / theta;
  double sum = regularized_gamma_p(nu, u);

  // When the gamma-kernel prefactor u^nu e^-u underflows, every correction
  // term underflows with it (their growth is at most exp(2*sqrt(u*m))) and
  // the leading regularized gamma term is the full answer.
  const double log_pref = nu * std::log(u) - u;
  if (log_pref < -745.0) return std::clamp(sum, 0.0, 1.0);
  const double log2_pref = log_pref * 1.4426950408889634;
  const int pref_exp = static_cast<int>(std::floor(log2_pref));
  const double pref_mant = std::exp2(log2_pref - pref_exp);

  double lm1 = 0.0;                 // L_{m-1}, scaled
  double lm = 1.0;                  // L_m, scaled (m = 0)
  int lexp = 0;                     // shared scale: true L = stored * 2^lexp
  double fm = std::exp(-std::lgamma(nu + 1.0));  // m!/Gamma(nu+m+1) at m = 0

  double max_term = 0.0;
  double peak_m = 0.0;
  int grow_run = 0;
  int below_tol_run = 0;
  double prev_abs = -1.0;
  bool converged = false;

  for (int m = 0; m < max_terms; ++m) {
    const double raw = fm * g[static_cast<std::size_t>(m) + 1] * lm * pref_mant;
    const double term = std::ldexp(raw, lexp + pref_exp);
    if (!std::isfinite(term)) {
      std::ostringstream os;
      os << "cdf_laguerre: term " << m << " overflowed (x = " << x
         << "); series numerically unusable here, use cdf_imhof";
      throw NumericalError(os.str());
    }
    sum += term;

    const double at = std::fabs(term);
    if (at > max_term) {
      max_term = at;
      peak_m = m;
    }
    grow_run = (prev_abs >= 0.0 && at > prev_abs) ? grow_run + 1 : 0;
    prev_abs = at;
    if (grow_run >= 10 && at > 1e3) {
      std::ostringstream os;
      os << "cdf_laguerre: partial sums growing without bound (term " << m
         << " magnitude " << at << "); series diverging, use cdf_imhof";
      throw NumericalError(os.str());
    }
    below_tol_run = (at < tol) ? below_tol_run + 1 : 0;
    if (m >= 16 && below_tol_run >= 4 &&
        static_cast<double>(m) >= 2.0 * peak_m + 16.0) {
      converged = true;
      break;
    }

    // Advance the Laguerre recurrence:
    // (m+1) L_{m+1} = (2m + nu + 1 - u) L_m - (m + nu) L_{m-1}.
    const double lnext =
        ((2.0 * m + nu + 1.0 - u) * lm - (m + nu) * lm1) / (m + 1.0);
    lm1 = lm;
    lm = lnext;
    const double mag = std::max(std::fabs(lm), std::fabs(lm1));
    if (mag > 0x1p512) {
      lm = std::ldexp(lm, -512);
      lm1 = std::ldexp(lm1, -512);
      lexp += 512;
    } else if (mag > 0.0 && mag < 0x1p-512) {
      lm = std::ldexp(lm, 512);
      lm1 = std::ldexp(lm1, 512);
      lexp -= 512;
    }
    fm *= (m + 1.0) / (nu + m + 1.0);
  }

  if (!converged) {
    std::ostringstream os;
    os << "cdf_laguerre: no convergence within " << max_terms
       << " terms (x = " << x << ", last |term| = " << prev_abs
       << "); increase max_terms or use cdf_imhof";
    throw NumericalError(os.str());
  }
  if (max_term * kEps > 10.0 * tol) {
    std::ostringstream os;
    os << "cdf_laguerre: cancellation exceeds tolerance (largest term "
       << max_term << " vs tolerance " << tol << "); use cdf_imhof";
    throw NumericalError(os.str());
  }

  if (sum < -1e-6 || sum > 1.0 + 1e-6) {
    std::ostringstream os;
    os << "cdf_laguerre: result " << sum << " clamped to [0,1] (x = " << x
       << ")";
    emit_warning(os.str());
  }
  return std::clamp(sum, 0.0, 1.0);
}

// --- Error rates and ROC -----------------------------------------------------

double analytic_far(const WeightedChiSquareSpec& spec_h0, double threshold) {
  if (!(threshold >= 0.0))
    throw std::invalid_argument("analytic_far: threshold must be >= 0");
  return 1.0 - cdf_imhof(spec_h0, threshold);
}

double analytic_mdr(const WeightedChiSquareSpec& spec_h1, double threshold) {
  if (!(threshold >= 0.0))
    throw std::invalid_argument("analytic_mdr: threshold must be >= 0");
  return cdf_imhof(spec_h1, threshold);
}

double threshold_for_far(const WeightedChiSquareSpec& spec_h0,
                         double far_target) {
  if (!(far_target > 0.0 && far_target < 1.0))
    throw std::invalid_argument("threshold_for_far: target must be in (0, 1)");
  const double scale = mean(spec_h0) + 10.0 * std::sqrt(variance(spec_h0));
  double lo = 0.0;
  double hi = scale;
  while (analytic_far(spec_h0, hi) > far_target) {
    hi *= 2.0;
    if (hi > 1e9 * scale)
      throw NumericalError(
          "threshold_for_far: bracket expansion failed; target too small");
  }
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (mid == lo || mid == hi) break;
    (analytic_far(spec_h0, mid) > far_target ? lo : hi) = mid;
    if (hi - lo <= 1e-12 * hi) break;
  }
  return 0.5 * (lo + hi);
}

RocCurve analytic_roc(const WeightedChiSquareSpec& spec_h0,
                      const WeightedChiSquareSpec& spec_h1,
                      const std::vector<double>& threshold_grid) {
  if (threshold_grid.empty())
    throw std::invalid_argument("analytic_roc: empty threshold grid");
  for (std::size_t i = 0; i < threshold_grid.size(); ++i) {
    if (!(threshold_grid[i] >= 0.0))
      throw std::invalid_argument("analytic_roc: thresholds must be >= 0");
    if (i > 0 && !(threshold_grid[i] > threshold_grid[i - 1]))
      throw std::invalid_argument(
          "analytic_roc: thresholds must be strictly increasing");
  }
  RocCurve curve;
  curve.provenance = "analytic";
  std::uint64_t h = 1469598103934665603ULL;
  auto hash_doubles = [&h](const std::vector<double>& v) {
    h = fnv1a(v.data(), v.size() * sizeof(double), h);
  };
  hash_doubles(spec_h0.weights);
  hash_doubles(spec_h0.noncentrality);
  hash_doubles(spec_h1.weights);
  hash_doubles(spec_h1.noncentrality);
  hash_doubles(threshold_grid);
  curve.fingerprint = h;
  curve.points.reserve(threshold_grid.size());
  for (double eps : threshold_grid) {
    RocPoint p;
    p.threshold = eps;
    p.pfa = analytic_far(spec_h0, eps);
    p.pd = 1.0 - analytic_mdr(spec_h1, eps);
    curve.points.push_back(p);
  }
  return curve;
}

}  // namespace uwauth
