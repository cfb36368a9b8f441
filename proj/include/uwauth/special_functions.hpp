// special_functions.hpp -- scalar special functions needed by the analytic
// error-rate machinery: regularized incomplete gamma, normal CDF/quantile,
// chi-square CDF.
#pragma once

namespace uwauth {

// Regularized lower incomplete gamma P(a, x) = gamma(a, x) / Gamma(a).
// Requires a > 0 and x >= 0; throws std::invalid_argument otherwise.
// Absolute accuracy ~1e-14 over the tested domain.
double regularized_gamma_p(double a, double x);

// Regularized upper incomplete gamma Q(a, x) = 1 - P(a, x), computed directly
// (series/continued fraction) so small tail values keep relative accuracy.
double regularized_gamma_q(double a, double x);

// Standard normal CDF.
double normal_cdf(double z);

// Standard normal quantile (inverse CDF).  Requires 0 < p < 1.
double normal_quantile(double p);

// CDF of a central chi-square distribution with dof degrees of freedom.
double chi_square_cdf(double x, double dof);

// Quantile of a central chi-square distribution with dof degrees of freedom.
double chi_square_quantile(double p, double dof);

}  // namespace uwauth
