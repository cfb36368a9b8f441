// analytic.hpp -- closed-form error-rate machinery.  The authentication
// statistic under either hypothesis is modeled as a weighted sum of
// independent noncentral chi-square variables; this module builds those
// distribution descriptions and evaluates their CDFs by two independent
// numerical routes (characteristic-function inversion and a Laguerre series),
// from which false-alarm and missed-detection rates and ROC curves follow.
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "uwauth/authenticator.hpp"
#include "uwauth/channel.hpp"
#include "uwauth/localization.hpp"

namespace uwauth {

// Distribution of Q = sum_i weights[i] * chi2_1(noncentrality[i]) with one
// degree of freedom per term and independent terms.
struct WeightedChiSquareSpec {
  std::vector<double> weights;        // strictly positive scale per term
  std::vector<double> noncentrality;  // lambda_i >= 0 (all zero under H0)
};

// Throws std::invalid_argument unless weights are strictly positive and
// finite, noncentralities non-negative and finite, sizes equal and >= 1.
void validate(const WeightedChiSquareSpec& spec);

// E[Q] = sum gamma_i (1 + lambda_i).
double mean(const WeightedChiSquareSpec& spec);
// Var[Q] = sum 2 gamma_i^2 (1 + 2 lambda_i).
double variance(const WeightedChiSquareSpec& spec);

// --- Statistic laws -------------------------------------------------------

// Measurement-sum model of the legitimate-case statistic: each link
// contributes (2 d_i sigma_i)^2 * chi2_1, i.e. the per-link squared noise
// terms are summed directly.
WeightedChiSquareSpec spec_under_h0(const LocalizationSystem& system,
                                    const LegitimateProfile& profile,
                                    const ChannelParams& params);

// Measurement-sum model under an attacker at attacker_pos: per-link scale
// (2 d_i^E sigma_i^E)^2 and noncentrality ((d_i^E)^2 - (d_i^A)^2)^2 / scale.
WeightedChiSquareSpec spec_under_h1(const LocalizationSystem& system,
                                    const LegitimateProfile& profile,
                                    Vec2 attacker_pos,
                                    const ChannelParams& params);

// Exact law of the linearized estimator chain.  The statistic maps the
// per-link noise vector through a rank-2 orthogonal projection (solve for the
// 2-D position, then lift back to measurement space), so only two weighted
// noncentral chi-square terms survive: the eigenvalues of D P D with
// D = diag(2 d_i sigma_i) and P the projector onto the row space of the
// position solver.  These laws describe what the pipeline actually computes
// (up to measurement-noise linearization) and are used to separate modeling
// gap from nonlinearity when comparing against Monte Carlo.
WeightedChiSquareSpec estimator_spec_under_h0(const LocalizationSystem& system,
                                              const LegitimateProfile& profile,
                                              const ChannelParams& params);
WeightedChiSquareSpec estimator_spec_under_h1(const LocalizationSystem& system,
                                              const LegitimateProfile& profile,
                                              Vec2 attacker_pos,
                                              const ChannelParams& params);

// --- CDF evaluators --------------------------------------------------------

struct ImhofParams {
  double tolerance = 1e-10;  // absolute CDF error target
  int max_panels = 200000;   // quadrature panel budget
};

// P(Q <= x) by numerical inversion of the characteristic function (Imhof's
// oscillatory integral) with adaptive Gauss-Kronrod panels and a rigorous
// truncation bound.  Requires x >= 0.  Throws NumericalError with diagnostics
// if the truncation point or the panel budget cannot meet the tolerance.
double cdf_imhof(const WeightedChiSquareSpec& spec, double x,
                 const ImhofParams& params = {});
double cdf_imhof(const WeightedChiSquareSpec& spec, double x, double tol);

struct LaguerreSeriesParams {
  double beta = 0.0;    // expansion scale shape; 0 selects a convergent default
  double mu0 = 0.0;     // expansion location parameter; 0 selects the default
  int max_terms = 500;  // series truncation budget
  double tolerance = 1e-9;  // absolute CDF error target
};

// P(Q <= x) by a generalized-Laguerre expansion around a gamma kernel whose
// scale theta = 2 * beta * mu0 / (nu + 1), nu = L/2.  The series converges
// iff theta exceeds every weight; the default parameters guarantee that with
// theta = 1.5 * max weight.  Throws NumericalError (recommending cdf_imhof)
// on provable divergence, explosive terms, truncation-budget exhaustion, or
// when rounding noise in the accumulated terms exceeds the tolerance.
double cdf_laguerre(const WeightedChiSquareSpec& spec, double x,
                    const LaguerreSeriesParams& params = {});

// --- Error rates and ROC ---------------------------------------------------

// P_fa(threshold) = 1 - CDF_{Q|H0}(threshold), via cdf_imhof.
double analytic_far(const WeightedChiSquareSpec& spec_h0, double threshold);

// P_md(threshold) = CDF_{Q|H1}(threshold), via cdf_imhof.
double analytic_mdr(const WeightedChiSquareSpec& spec_h1, double threshold);

// Smallest threshold with P_fa <= far_target (the survival function is
// continuous and strictly decreasing, so this inverts it).  far_target must
// lie in (0, 1).
double threshold_for_far(const WeightedChiSquareSpec& spec_h0, double far_target);

struct RocPoint {
  double threshold = 0.0;
  double pfa = 0.0;
  double pd = 0.0;
};

struct RocCurve {
  std::vector<RocPoint> points;
  std::string provenance;       // "analytic" or "empirical"
  std::uint64_t fingerprint = 0;  // hash of the generating configuration
};

// One (P_fa, P_d) pair per grid threshold.  The grid must be strictly
// increasing and non-negative; throws std::invalid_argument otherwise.
RocCurve analytic_roc(const WeightedChiSquareSpec& spec_h0,
                      const WeightedChiSquareSpec& spec_h1,
                      const std::vector<double>& threshold_grid);

}  // namespace uwauth
