#include <doctest.h>

#include <boost/math/special_functions/gamma.hpp>
#include <algorithm>
#include <cmath>
#include <random>

#include "svesim/analysis.hpp"
#include "svesim/errors.hpp"
#include "svesim/mittag_leffler.hpp"

using namespace svesim;

namespace {

SimConfig config(std::size_t N, std::size_t M, std::size_t paths, std::uint64_t seed = 9) {
  SimConfig c;
  c.T = 1.0;
  c.N = N;
  c.M = M;
  c.n_paths = paths;
  c.seed = seed;
  return c;
}

PathEnsemble deterministic(const std::vector<std::vector<double>>& rows) {
  PathEnsemble e;
  e.n_paths = rows.size();
  e.n_steps = rows[0].size();
  for (std::size_t k = 0; k < e.n_steps; ++k) e.grid.push_back(static_cast<double>(k + 1) / e.n_steps);
  e.g_values.assign(e.n_steps, 0.0);
  for (const auto& r : rows) e.values.insert(e.values.end(), r.begin(), r.end());
  return e;
}

}  // namespace

TEST_CASE("comparison report statistics") {
  const PathEnsemble a = deterministic({{0.0, 0.1, 0.2}, {1.0, 1.0, 1.0}});
  const ComparisonReport same = comparison_report(a, a);
  CHECK(same.violation_fraction == 0.0);
  CHECK(same.max_exceedance == 0.0);
  CHECK(same.per_time_means == std::vector<double>{0.0, 0.0, 0.0});

  // second ensemble dips below the first on path 0 by 0.05 and path 1 by 0.3
  const PathEnsemble b = deterministic({{0.0, 0.05, 0.3}, {0.7, 1.2, 1.1}});
  const ComparisonReport r = comparison_report(a, b, 0.1);
  CHECK(r.n_violating == 1);
  CHECK(r.violation_fraction == 0.5);
  CHECK(r.max_exceedance == doctest::Approx(0.3));
  CHECK(r.per_time_means[0] == doctest::Approx(-0.15));
  CHECK(r.per_time_se[0] == doctest::Approx(0.15));
  CHECK(comparison_report(a, b, 0.0).n_violating == 2);

  const PathEnsemble c = deterministic({{0.0, 0.1}, {1.0, 1.0}});
  CHECK_THROWS_AS(comparison_report(a, c), PreconditionError);
  CHECK_THROWS_AS(comparison_report(a, a, -1.0), ParameterError);
}

TEST_CASE("coupled identical problems never violate") {
  const SveProblem p{InputCurve::constant(0.5), soe_from_fractional(0.7, 40, 1e-3, 1e4),
                     Coefficient::linear(0.0, 1.0), Coefficient::constant(1.0), 1.0};
  const auto [a, b] = simulate_coupled(p, p, config(40, 2, 200), BrownianDriver(1), Scheme::splitting);
  const ComparisonReport r = comparison_report(a, b);
  CHECK(r.violation_fraction == 0.0);
  CHECK(r.max_exceedance == 0.0);
}

TEST_CASE("bound components") {
  InputCurve lin;
  lin.g_tilde = [](double t) { return t; };
  const Kernel flat = Kernel::exp_sum({2.0}, {0.0});
  const BoundComponents a = bound_components(lin, flat, [](double) { return 2.0; }, 1.0, 10, 1000);
  CHECK(a.omega_g == doctest::Approx(0.1).epsilon(1e-12));
  CHECK(a.omega_K == 0.0);
  CHECK(a.sup_C2 == doctest::Approx(0.4).epsilon(1e-12));

  for (std::size_t N : {10u, 50u}) {
    const BoundComponents f = bound_components(InputCurve::constant(1.0), Kernel::fractional(1.5), {}, 1.0, N, 2000);
    const double h = 1.0 / N;
    CHECK(std::abs(f.omega_K - std::sqrt(h) / boost::math::tgamma(1.5)) <= 1e-6);
    CHECK(f.omega_g == 0.0);
    CHECK(f.sup_C2 == 0.0);
  }
  CHECK(std::isinf(bound_components(lin, Kernel::fractional(0.7), {}, 1.0, 10, 100).omega_K));
  // singular g: modulus on [t_1, T] is finite
  const BoundComponents s = bound_components(InputCurve::power(1.0, 0.8), flat, {}, 1.0, 16, 1600);
  CHECK(std::isfinite(s.omega_g));
  CHECK(s.omega_g > 0.0);
}

TEST_CASE("theta formula") {
  CHECK(theta_formula(0.5, 2.0, 1.0, 12.0).value == 0.5);
  CHECK_FALSE(theta_formula(0.5, 2.0, 1.0, 12.0).warning);
  CHECK(theta_formula(0.3, 1.0, 0.0, 5.0).value == doctest::Approx(0.3 + 1.0 / 6.0));
  std::mt19937_64 rng(41);
  std::uniform_real_distribution<double> ug(0.01, 0.5), ue(0.05, 4.0), ux(0.0, 1.0), uq(2.01, 60.0);
  for (int i = 0; i < 100; ++i) {
    const double g = ug(rng), eta = ue(rng), xi = ux(rng), q = uq(rng);
    const ThetaResult t = theta_formula(g, eta, xi, q);
    const double bound = 2.0 * xi * (1.0 + 1.0 / eta) / (g + eta / (2.0 * (2.0 + eta)));
    CHECK((t.value > 0.0) == (q > bound));
    CHECK(t.warning == (t.value <= 0.0));
  }
}

TEST_CASE("empirical holder exponent") {
  std::vector<std::vector<double>> rows(3, std::vector<double>(64));
  for (auto& r : rows)
    for (std::size_t k = 0; k < 64; ++k) r[k] = static_cast<double>(k + 1) / 64.0;
  const PathEnsemble lin = deterministic(rows);
  CHECK(std::abs(empirical_holder(lin, lin.g_values, 4.0, {1, 2, 4, 8}) - 1.0) <= 1e-10);

  const PathEnsemble flat = deterministic({{1.0, 1.0, 1.0, 1.0}});
  CHECK_THROWS_AS(empirical_holder(flat, flat.g_values, 4.0, {1, 2}), EstimationError);
  CHECK_THROWS_AS(empirical_holder(lin, lin.g_values, 4.0, {1, 64}), RangeError);
  CHECK_THROWS_AS(empirical_holder(lin, lin.g_values, 1.0, {1, 2}), ParameterError);

  const SveProblem bm{InputCurve::constant(0.0), Kernel::exp_sum({1.0}, {0.0}), Coefficient::constant(0.0),
                      Coefficient::constant(1.0), 1.0};
  const PathEnsemble e = simulate_splitting(bm, config(256, 1, 1000), BrownianDriver(3));
  CHECK(std::abs(empirical_holder(e, e.g_values, 4.0, {1, 2, 4, 8, 16}) - 0.5) <= 0.05);
}

TEST_CASE("resolvent of the second kind") {
  for (double a : {0.5, 1.0, 2.0}) {
    const Resolvent r = resolvent_second_kind([a](double) { return a; }, 1.0, 4096);
    REQUIRE(r.t.size() == 4097);
    CHECK(r.t.back() == 1.0);
    for (std::size_t i = 0; i <= 4096; i += 512) {
      const double want = a * std::exp(a * r.t[i]);
      CHECK(std::abs(r.R[i] - want) <= 1e-6 * want);
    }
  }
  const Resolvent zero = resolvent_second_kind([](double) { return 0.0; }, 2.0, 64);
  for (double v : zero.R) CHECK(v == 0.0);

  // F(t) = t: R = sinh(t) solves R = t + int_0^t (t-s) R(s) ds
  const Resolvent lin = resolvent_second_kind([](double t) { return t; }, 1.0, 1024);
  const Resolvent fine = resolvent_second_kind([](double t) { return t; }, 1.0, 4096);
  for (std::size_t i = 0; i <= 1024; i += 128) {
    CHECK(std::abs(lin.R[i] - fine.R[4 * i]) <= 1e-6 * std::max(1e-3, fine.R[4 * i]));
    CHECK(std::abs(fine.R[4 * i] - std::sinh(fine.t[4 * i])) <= 1e-6);
  }

  // weakly singular F(t) = t^{-1/2}/Gamma(1/2): R(t) = t^{-1/2}/Gamma(1/2) + exp(t) erfc(-sqrt t)
  const auto F = [](double t) { return 1.0 / std::sqrt(M_PI * t); };
  // linear interpolation of a t^{-1/2} solution: error decays like h^{3/4} or so
  const auto worst = [&](const Resolvent& r) {
    double w = 0.0;
    const std::size_t n = r.t.size() - 1;
    for (std::size_t i = n / 8; i <= n; i += n / 8) {
      const double t = r.t[i];
      const double want = F(t) + std::exp(t) * std::erfc(-std::sqrt(t));
      w = std::max(w, std::abs(r.R[i] - want) / want);
    }
    return w;
  };
  const Resolvent s = resolvent_second_kind(F, 1.0, 2048);
  const double e1 = worst(resolvent_second_kind(F, 1.0, 512));
  const double e2 = worst(s);
  CHECK(e2 <= 2e-3);
  CHECK(std::log2(e1 / e2) / 2.0 >= 0.6);
  for (double v : s.R) CHECK(v >= 0.0);

  CHECK_THROWS_AS(resolvent_second_kind([](double t) { return 1.0 / t; }, 1.0, 64), DomainError);
  CHECK_THROWS_AS(resolvent_second_kind([](double) { return 1.0; }, 1.0, 8), ParameterError);
}

TEST_CASE("strong error study") {
  const SveProblem still{InputCurve::power(1.0, 0.8), Kernel::exp_sum({1.0, 2.0}, {0.5, 5.0}),
                         Coefficient::constant(0.0), Coefficient::constant(0.0), 1.0};
  const ConvergenceReport z = strong_error(still, config(16, 1, 4), {4, 8, 16}, 2, 1.0);
  for (double e : z.errors) CHECK(e <= 1e-20);
  CHECK(z.N_ref == 32);

  const SveProblem ou{InputCurve::constant(1.0), Kernel::exp_sum({1.0, 2.0}, {0.5, 5.0}),
                      Coefficient::linear(0.2, -1.0), Coefficient::constant(0.6), 1.0};
  const ConvergenceReport r = strong_error(ou, config(16, 1, 400), {8, 16, 32}, 4, 1.0);
  REQUIRE(r.errors.size() == 3);
  CHECK(r.errors[0] > r.errors[1]);
  CHECK(r.errors[1] > r.errors[2]);
  CHECK(r.fitted_rate > 0.0);
  CHECK(r.components.size() == 3);

  CHECK_THROWS_AS(strong_error(ou, config(16, 1, 4), {8, 6}, 2, 1.0), PreconditionError);
  CHECK_THROWS_AS(strong_error(ou, config(16, 1, 4), {8, 12}, 1, 1.0), PreconditionError);
  CHECK_THROWS_AS(strong_error(ou, config(16, 1, 4), {8, 16}, 2, 0.3), PreconditionError);
}

TEST_CASE("counterexample report") {
  SimConfig c = config(64, 1, 200);
  c.T = 10.0;
  const CounterexampleReport same = counterexample_report(1.5, 1.0, 0.5, 0.5, c);
  for (std::size_t k = 0; k < same.grid.size(); ++k) {
    CHECK(same.analytic_diff[k] == 0.0);
    CHECK(same.mc_diff_mean[k] == 0.0);
  }
  const CounterexampleReport r = counterexample_report(1.5, 1.0, 0.0, 1.0, c);
  double lo = 0.0;
  for (double v : r.analytic_diff) lo = std::min(lo, v);
  CHECK(lo < 0.0);
  CHECK(r.analytic_diff[r.scan_min_index] < 0.0);
  for (std::size_t k = 0; k < r.grid.size(); ++k)
    CHECK(r.analytic_diff[k] == doctest::Approx(std::pow(r.grid[k], 0.0) * ml(1.5, 1.0, -std::pow(r.grid[k], 1.5))));
  // beta0 = alpha: t^{1/2} E_{1.5,1.5}(-t^1.5) still changes sign (at t near 3)
  const CounterexampleReport eq = counterexample_report(1.5, 1.5, 0.0, 1.0, c);
  CHECK(eq.analytic_diff[0] > 0.0);
  CHECK(*std::min_element(eq.analytic_diff.begin(), eq.analytic_diff.end()) < 0.0);
  CHECK_THROWS_AS(counterexample_report(0.8, 1.0, 0.0, 1.0, c), ParameterError);
}
