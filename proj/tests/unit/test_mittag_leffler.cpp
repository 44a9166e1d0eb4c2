#include <doctest.h>

#include <boost/math/special_functions/gamma.hpp>
#include <cmath>
#include <random>

#include "svesim/errors.hpp"
#include "svesim/mittag_leffler.hpp"

using namespace svesim;

namespace {

struct OracleRow {
  double alpha, beta, z, value;
};

// Power series summed in arbitrary precision (tests/oracles/ml_series_mpmath.py).
const OracleRow kOracle[] = {
#include "ml_oracle_values.inc"
};

double mixed_error(double got, double want) { return std::abs(got - want) / std::max(1.0, std::abs(want)); }

}  // namespace

TEST_CASE("matches the high-precision power series oracle") {
  double worst = 0.0;
  for (const OracleRow& r : kOracle) {
    const MlResult m = mittag_leffler(r.alpha, r.beta, r.z);
    CAPTURE(r.alpha);
    CAPTURE(r.beta);
    CAPTURE(r.z);
    CAPTURE(ml_method_name(m.method));
    CHECK(mixed_error(m.value, r.value) <= 5e-13);
    worst = std::max(worst, mixed_error(m.value, r.value));
  }
  MESSAGE("worst mixed error " << worst);
}

TEST_CASE("closed forms") {
  for (double x = -20.0; x <= 5.0; x += 0.37) CHECK(mixed_error(ml(1.0, 1.0, x), std::exp(x)) <= 1e-12);
  for (double x = 0.1; x <= 6.0; x += 0.29) {
    CHECK(std::abs(ml(2.0, 1.0, -x * x) - std::cos(x)) <= 1e-12);
    CHECK(std::abs(ml(2.0, 2.0, -x * x) - std::sin(x) / x) <= 1e-12);
  }
  // E_{1/2,1}(-x) = exp(x^2) erfc(x)
  for (double x = 0.05; x <= 5.0; x += 0.25)
    CHECK(mixed_error(ml(0.5, 1.0, -x), std::exp(x * x) * std::erfc(x)) <= 1e-12);
  // E_{1,2}(z) = (e^z - 1) / z
  for (double z : {-30.0, -3.0, -0.5, 0.5, 4.0}) CHECK(mixed_error(ml(1.0, 2.0, z), std::expm1(z) / z) <= 1e-12);
}

TEST_CASE("value at zero is 1/Gamma(beta)") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> ua(0.05, 2.0), ub(0.05, 6.0);
  for (int i = 0; i < 50; ++i) {
    const double a = ua(rng), b = ub(rng);
    CHECK(std::abs(ml(a, b, 0.0) - 1.0 / boost::math::tgamma(b)) <= 1e-14);
  }
}

TEST_CASE("rgamma against boost, including the reflection branch and poles") {
  for (double x : {0.3, 1.0, 2.5, 10.7, 120.2, -0.4, -1.5, -7.25, -30.6})
    CHECK(mixed_error(rgamma(x), 1.0 / boost::math::tgamma(x)) <= 1e-13);
  for (double x : {0.0, -1.0, -2.0, -17.0}) CHECK(rgamma(x) == 0.0);
}

TEST_CASE("method regions and their crossovers agree") {
  CHECK(mittag_leffler(0.8, 1.0, -0.99).method == MlMethod::series);
  CHECK(mittag_leffler(0.8, 1.0, -1.01).method == MlMethod::contour);
  CHECK(mittag_leffler(0.8, 1.0, -49.0).method == MlMethod::contour);
  for (double a : {0.6, 0.75, 1.0, 1.5, 1.9, 2.0})
    for (double b : {0.5, 0.75, 1.0, 1.5}) {
      CAPTURE(a);
      CAPTURE(b);
      CHECK(std::abs(ml_series(a, b, -1.0).value - ml_contour(a, b, -1.0).value) <= 1e-13);
      CHECK(std::abs(ml_contour(a, b, -50.0).value - mittag_leffler(a, b, -50.0).value) <= 1e-12);
    }
}

TEST_CASE("asymptotic branch for large arguments") {
  // two leading terms -1/(z Gamma(beta - alpha)) - 1/(z^2 Gamma(beta - 2 alpha))
  for (double a : {0.6, 0.75, 0.9})
    for (double z : {-500.0, -1e4, -1e6}) {
      const MlResult r = mittag_leffler(a, 0.6, z);
      CAPTURE(a);
      CAPTURE(z);
      const double lead = -rgamma(0.6 - a) / z - rgamma(0.6 - 2 * a) / (z * z);
      CHECK(std::isfinite(r.value));
      CHECK(std::abs(r.value - lead) <= 1e-6 * std::abs(lead) + 5.0 / std::abs(z * z * z));
    }
}

TEST_CASE("parameter errors") {
  CHECK_THROWS_AS(ml(0.0, 1.0, 1.0), ParameterError);
  CHECK_THROWS_AS(ml(2.5, 1.0, 1.0), ParameterError);
  CHECK_THROWS_AS(ml(1.0, 0.0, 1.0), ParameterError);
  CHECK_THROWS_AS(ml(1.0, 1.0, std::nan("")), ParameterError);
  CHECK_THROWS_AS(ml_sign_scan(0.75, 0.6, -1.0, 100), ParameterError);
}

TEST_CASE("sign dichotomy of t^(gamma-1) E_{alpha,gamma}(-t^alpha)") {
  const SignReport neg1 = ml_sign_scan(0.75, 0.6, 50.0, 2000);
  REQUIRE(neg1.first_negative_t.has_value());
  CHECK(*neg1.first_negative_t > 0.0);
  CHECK(neg1.min_value < -1e-6);
  CHECK(ml(0.75, 0.6, -std::pow(*neg1.first_negative_t, 0.75)) < 0.0);
  CHECK(ml_sign_scan(1.5, 1.0, 50.0, 2000).first_negative_t.has_value());
  CHECK_FALSE(ml_sign_scan(0.75, 0.9, 50.0, 2000).first_negative_t.has_value());
  // gamma = alpha > 1 still oscillates: E_{1.5,1.5}(-8) from the mpmath series
  const SignReport osc = ml_sign_scan(1.5, 1.5, 50.0, 2000);
  CHECK(osc.first_negative_t.has_value());
  CHECK(ml(1.5, 1.5, -8.0) == doctest::Approx(-0.072657823578414058702).epsilon(1e-13));
  // completely monotone when alpha <= 1 and gamma >= alpha
  CHECK(ml_sign_scan(0.5, 0.5, 50.0, 500).min_value > 0.0);
}

TEST_CASE("laplace identity") {
  for (auto [a, g, lam, s] : {std::tuple{0.75, 0.6, 1.0, 1.0}, std::tuple{1.5, 1.0, 1.0, 2.0},
                              std::tuple{0.9, 0.5, 2.0, 0.5}}) {
    const LaplaceCheck c = laplace_identity_check(a, g, lam, s, 200.0);
    CHECK(c.analytic == doctest::Approx(std::pow(s, a - g) / (std::pow(s, a) + lam)).epsilon(1e-15));
    CHECK(std::abs(c.numeric - c.analytic) <= 1e-8);
    CHECK_FALSE(c.accuracy_warning);
  }
}

TEST_CASE("fractional OU mean reduces to the classical OU mean for alpha = gamma0 = 1") {
  const double x = 0.7, beta = -1.3, b = 0.4;
  for (double t : {0.1, 1.0, 3.0}) {
    const double ou = x * std::exp(beta * t) + b * std::expm1(beta * t) / beta;
    CHECK(frac_ou_mean(x, 1.0, 1.0, beta, b, t) == doctest::Approx(ou).epsilon(1e-11));
  }
}
