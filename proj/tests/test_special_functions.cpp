// test_special_functions.cpp -- gamma/normal/chi-square helpers against
// closed forms and independently computed reference values.
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "doctest.h"
#include "uwauth/special_functions.hpp"

using namespace uwauth;

TEST_CASE("regularized gamma closed forms") {
  // P(1, x) = 1 - exp(-x).
  for (double x : {0.1, 0.5, 1.0, 2.0, 5.0, 20.0})
    CHECK(regularized_gamma_p(1.0, x) ==
          doctest::Approx(1.0 - std::exp(-x)).epsilon(1e-13));
  // P(1/2, x) = erf(sqrt(x)).
  for (double x : {0.01, 0.25, 1.0, 4.0, 9.0})
    CHECK(regularized_gamma_p(0.5, x) ==
          doctest::Approx(std::erf(std::sqrt(x))).epsilon(1e-13));
}

TEST_CASE("regularized gamma complement sums to one") {
  for (double a : {0.5, 1.0, 2.5, 10.0, 50.0})
    for (double x : {0.1, 1.0, 5.0, 40.0, 200.0})
      CHECK(regularized_gamma_p(a, x) + regularized_gamma_q(a, x) ==
            doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("regularized gamma rejects bad arguments") {
  CHECK_THROWS_AS(regularized_gamma_p(0.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(regularized_gamma_p(-1.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(regularized_gamma_p(1.0, -0.5), std::invalid_argument);
  CHECK(regularized_gamma_p(3.0, 0.0) == 0.0);
}

TEST_CASE("normal cdf and quantile") {
  CHECK(normal_cdf(0.0) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(normal_cdf(1.959963984540054) == doctest::Approx(0.975).epsilon(1e-12));
  CHECK(normal_quantile(0.975) ==
        doctest::Approx(1.959963984540054).epsilon(1e-12));
  CHECK(normal_quantile(0.5) == doctest::Approx(0.0).epsilon(1e-12));

  SUBCASE("quantile inverts cdf across the range") {
    // Upper-tail p is stored as 1 - tiny, so rounding p to a double limits
    // any inverse to |dz| ~ ulp(1)/pdf(z); past z ~ 5.5 that exceeds 1e-9
    // relative.  The lower tail keeps full relative precision in p.
    for (double z = -6.0; z <= 5.5; z += 0.25)
      CHECK(normal_quantile(normal_cdf(z)) == doctest::Approx(z).epsilon(1e-9));
    for (double z = 5.75; z <= 6.5; z += 0.25)
      CHECK(std::abs(normal_quantile(normal_cdf(z)) - z) < 1e-7);
  }
  SUBCASE("out-of-range probabilities rejected") {
    CHECK_THROWS_AS(normal_quantile(0.0), std::invalid_argument);
    CHECK_THROWS_AS(normal_quantile(1.0), std::invalid_argument);
    CHECK_THROWS_AS(normal_quantile(-0.5), std::invalid_argument);
  }
}

TEST_CASE("chi-square cdf matches references and closed forms") {
  CHECK(chi_square_cdf(3.841, 1) ==
        doctest::Approx(0.9499863162360432).epsilon(1e-12));
  // dof = 3 closed form: 2 Phi(sqrt(x)) - 1 - sqrt(2x/pi) exp(-x/2).
  for (double x : {0.5, 2.0, 5.0, 10.0}) {
    const double closed = 2.0 * normal_cdf(std::sqrt(x)) - 1.0 -
                          std::sqrt(2.0 * x / std::numbers::pi) *
                              std::exp(-0.5 * x);
    CHECK(chi_square_cdf(x, 3) == doctest::Approx(closed).epsilon(1e-12));
  }
  // dof = 2 closed form: 1 - exp(-x/2).
  CHECK(chi_square_cdf(3.0, 2) ==
        doctest::Approx(1.0 - std::exp(-1.5)).epsilon(1e-13));
  CHECK(chi_square_cdf(0.0, 4) == 0.0);
  CHECK(chi_square_cdf(-1.0, 4) == 0.0);
}

TEST_CASE("chi-square quantile inverts the cdf") {
  CHECK(chi_square_quantile(0.95, 1) ==
        doctest::Approx(3.841458820694124).epsilon(1e-10));
  for (int dof : {1, 2, 5, 10})
    for (double p : {0.01, 0.1, 0.5, 0.9, 0.999})
      CHECK(chi_square_cdf(chi_square_quantile(p, dof), dof) ==
            doctest::Approx(p).epsilon(1e-9));
  CHECK_THROWS_AS(chi_square_quantile(1.0, 3), std::invalid_argument);
  CHECK_THROWS_AS(chi_square_cdf(1.0, 0), std::invalid_argument);
}
