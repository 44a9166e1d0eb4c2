#include <doctest.h>

#include <boost/math/special_functions/gamma.hpp>
#include <algorithm>
#include <cmath>
#include <random>

#include "svesim/errors.hpp"
#include "svesim/kernels.hpp"

using namespace svesim;

namespace {

double slope(const std::vector<double>& x, const std::vector<double>& y) {
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += std::log(x[i]);
    my += std::log(y[i]);
  }
  mx /= x.size();
  my /= y.size();
  double sxy = 0, sxx = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (std::log(x[i]) - mx) * (std::log(y[i]) - my);
    sxx += (std::log(x[i]) - mx) * (std::log(x[i]) - mx);
  }
  return sxy / sxx;
}

Kernel random_exp_sum(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> uw(0.0, 2.0), ur(0.0, 20.0);
  std::vector<double> w(1 + rng() % 6), r;
  for (auto& x : w) {
    x = uw(rng);
    r.push_back(ur(rng));
  }
  return Kernel::exp_sum(w, r);
}

}  // namespace

TEST_CASE("fractional kernel values and metadata") {
  for (double a : {0.55, 0.7, 1.0, 1.5, 1.95})
    for (double t : {1e-4, 0.3, 1.0, 7.0}) {
      const double want = std::pow(t, a - 1.0) / boost::math::tgamma(a);
      CHECK(Kernel::fractional(a)(t) == doctest::Approx(want).epsilon(1e-14));
    }
  CHECK(std::isinf(Kernel::fractional(0.7).meta().k0));
  CHECK(Kernel::fractional(1.0).meta().k0 == 1.0);
  CHECK(Kernel::fractional(1.5).meta().k0 == 0.0);
  CHECK(Kernel::fractional(0.7).meta().completely_monotone);
  CHECK_FALSE(Kernel::fractional(1.5).meta().nonincreasing);
  CHECK_THROWS_AS(Kernel::fractional(0.7)(0.0), DomainError);
  CHECK_THROWS_AS(Kernel::fractional(0.5), ParameterError);
  CHECK_THROWS_AS(Kernel::fractional(2.0), ParameterError);
}

TEST_CASE("exp_sum, tabulated and shifted construction") {
  const Kernel e = Kernel::exp_sum({1.0, 0.5}, {2.0, 0.0});
  CHECK(e(0.0) == 1.5);
  CHECK(e(1.0) == doctest::Approx(std::exp(-2.0) + 0.5).epsilon(1e-15));
  CHECK(e.meta().k0 == 1.5);
  CHECK(e.meta().completely_monotone);
  CHECK(Kernel::exp_sum({}, {})(3.0) == 0.0);
  CHECK_THROWS_AS(Kernel::exp_sum({-1.0}, {1.0}), ParameterError);
  CHECK_THROWS_AS(Kernel::exp_sum({1.0}, {-1.0}), ParameterError);
  CHECK_THROWS_AS(Kernel::exp_sum({1.0, 2.0}, {1.0}), ParameterError);

  const Kernel tab = Kernel::tabulated({0.0, 1.0, 3.0}, {2.0, 1.0, 0.0});
  CHECK(tab(0.5) == doctest::Approx(1.5));
  CHECK(tab(2.0) == doctest::Approx(0.5));
  CHECK_THROWS_AS(tab(3.5), RangeError);
  CHECK_THROWS_AS(Kernel::tabulated({0.0, 2.0, 1.0}, {1.0, 1.0, 1.0}), ParameterError);

  const Kernel f = Kernel::fractional(0.7);
  const Kernel s = shift(f, 0.01);
  CHECK(s(1.0) == doctest::Approx(f(1.01)).epsilon(1e-15));
  CHECK(s.meta().k0 == doctest::Approx(f(0.01)).epsilon(1e-15));
  CHECK(same_kernel(shift(s, 0.02), shift(f, 0.03)));
  CHECK_THROWS_AS(shift(f, 0.0), ParameterError);
}

TEST_CASE("completely monotone kernels are nonincreasing and convex") {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> ut(0.0, 5.0);
  for (int i = 0; i < 200; ++i) {
    const Kernel k = random_exp_sum(rng);
    double t[3] = {ut(rng), ut(rng), ut(rng)};
    std::sort(t, t + 3);
    const double tol = 1e-12 * std::max(1.0, k(0.0));
    CHECK(k(t[0]) >= k(t[1]) - tol);
    CHECK(k(t[1]) >= k(t[2]) - tol);
    CHECK(k(0.5 * (t[0] + t[2])) <= 0.5 * (k(t[0]) + k(t[2])) + tol);
  }
}

TEST_CASE("bernstein truncation is dominated by the original kernel") {
  std::mt19937_64 rng(23);
  for (int i = 0; i < 100; ++i) {
    const Kernel k = random_exp_sum(rng);
    const Kernel kt = bernstein_truncate(k, 5.0);
    CHECK(kt.meta().completely_monotone);
    for (double t : {0.0, 0.01, 0.3, 1.0, 4.0}) {
      CHECK(kt(t) >= 0.0);
      CHECK(kt(t) <= k(t));
    }
  }
  CHECK_THROWS_AS(bernstein_truncate(Kernel::fractional(0.7), 10.0), PreconditionError);
  CHECK_THROWS_AS(bernstein_truncate(Kernel::exp_sum({1.0}, {1.0}), 0.0), ParameterError);
}

TEST_CASE("sum-of-exponentials approximation of the fractional kernel") {
  const Kernel f = Kernel::fractional(0.7);
  const Kernel s = soe_from_fractional(0.7, 60, 1e-3, 1e4);
  REQUIRE(s.is_exp_sum());
  CHECK(s.meta().completely_monotone);
  CHECK(std::isfinite(s.meta().k0));
  double worst = 0.0;
  for (int i = 0; i < 200; ++i) {
    const double t = std::pow(10.0, -3.0 + 4.0 * i / 199.0);
    worst = std::max(worst, std::abs(s(t) - f(t)) / f(t));
  }
  CHECK(worst <= 1e-3);
  CHECK_THROWS_AS(soe_from_fractional(1.2, 60, 1e-3, 1e4), ParameterError);
  CHECK_THROWS_AS(soe_from_fractional(0.7, 1, 1e-3, 1e4), ParameterError);
  CHECK_THROWS_AS(soe_from_fractional(0.7, 60, 1e4, 1e-3), ParameterError);
}

TEST_CASE("holder parameters") {
  const HolderParams hp = holder_params(Kernel::fractional(0.7), 0.5);
  CHECK(hp.gamma == doctest::Approx(0.7 - 1.0 + 1.0 / 2.5));
  CHECK(holder_params(Kernel::exp_sum({1.0}, {1.0}), 1.0).gamma == doctest::Approx(1.0 / 3.0));
  // eta must stay below (2 alpha - 1)/(1 - alpha) = 4/3 for alpha = 0.7
  CHECK_THROWS_AS(holder_params(Kernel::fractional(0.7), 1.4), ParameterError);
  CHECK_THROWS_AS(holder_params(Kernel::fractional(0.7), 0.0), ParameterError);
}

TEST_CASE("L2 modulus of the fractional kernel scales as h^(alpha - 1/2)") {
  for (double a : {0.7, 0.9}) {
    const Kernel k = Kernel::fractional(a);
    std::vector<double> hs{0.2, 0.1, 0.05, 0.025}, head, sh;
    for (double h : hs) {
      const LpModulus m = modulus_l2(k, 1.0, h, 2.0, 400);
      head.push_back(m.norm_head);
      sh.push_back(m.norm_shift);
    }
    CHECK(std::abs(slope(hs, head) - (a - 0.5)) <= 0.01);
    CHECK(std::abs(slope(hs, sh) - (a - 0.5)) <= 0.05);
  }
  // exact head norm: (h^{2a-1}/(2a-1))^{1/2} / Gamma(a)
  const LpModulus m = modulus_l2(Kernel::fractional(0.7), 1.0, 0.1, 2.0, 400);
  CHECK(m.norm_head == doctest::Approx(std::sqrt(std::pow(0.1, 0.4) / 0.4) / std::tgamma(0.7)).epsilon(1e-8));
}

TEST_CASE("lag table") {
  const Kernel k = Kernel::exp_sum({2.0}, {1.0});
  const auto lt = lag_table(k, 0.5, 4);
  REQUIRE(lt.size() == 4);
  CHECK(lt[0] == 2.0);
  CHECK(lt[3] == k(1.5));
  CHECK(std::isinf(lag_table(Kernel::fractional(0.7), 0.1, 3)[0]));
}

TEST_CASE("non-negativity preservation") {
  NonnegCheckOptions opt;
  opt.n_trials = 300;
  std::mt19937_64 rng(29);
  for (int i = 0; i < 3; ++i) {
    const PropertyReport r = check_nonneg_preserving(random_exp_sum(rng), opt);
    CHECK(r.trials == 300);
    CHECK(r.violations == 0);
    CHECK(r.verdict == PropertyVerdict::no_violation_found);
  }
  CHECK(check_nonneg_preserving(soe_from_fractional(0.7, 60, 1e-3, 1e4), opt).violations == 0);
  CHECK(check_nonneg_preserving(shift(Kernel::fractional(0.7), 0.05), opt).violations == 0);

  // increasing kernel sampled from t^{1/2}/Gamma(3/2), offset so K(0+) > 0
  std::vector<double> grid, vals;
  for (int i = 0; i <= 400; ++i) {
    grid.push_back(0.025 * i);
    vals.push_back(Kernel::fractional(1.5)(grid.back() + 0.01));
  }
  const PropertyReport bad = check_nonneg_preserving(Kernel::tabulated(grid, vals), opt);
  CHECK(bad.violations > 0);
  CHECK(bad.verdict == PropertyVerdict::violation_found);
  REQUIRE(bad.witness.has_value());
  CHECK(bad.witness->value < 0.0);

  CHECK_THROWS_AS(check_nonneg_preserving(Kernel::fractional(0.7), opt), PreconditionError);
}

TEST_CASE("describe") {
  CHECK(Kernel::fractional(0.7).describe().find("fractional") != std::string::npos);
  CHECK(Kernel::exp_sum({1.0}, {2.0}).describe().find("expsum") != std::string::npos);
}
