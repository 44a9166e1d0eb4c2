#include <doctest.h>

#include <cmath>

#include "svesim/errors.hpp"
#include "svesim/mittag_leffler.hpp"
#include "svesim/schemes.hpp"

using namespace svesim;

namespace {

SveProblem ou_problem(const Kernel& k, double x0 = 1.0) {
  return {InputCurve::constant(x0), k, Coefficient::linear(0.3, -1.0), Coefficient::constant(0.5), 1.0};
}

SimConfig config(std::size_t N, std::size_t M, std::size_t paths, std::uint64_t seed = 9) {
  SimConfig c;
  c.T = 1.0;
  c.N = N;
  c.M = M;
  c.n_paths = paths;
  c.seed = seed;
  return c;
}

struct MeanSe {
  double mean, se;
};

MeanSe last_column(const PathEnsemble& e) {
  double s = 0.0, q = 0.0;
  const double n = static_cast<double>(e.n_paths);
  for (std::size_t i = 0; i < e.n_paths; ++i) s += e.at(i, e.n_steps - 1);
  const double m = s / n;
  for (std::size_t i = 0; i < e.n_paths; ++i) q += std::pow(e.at(i, e.n_steps - 1) - m, 2);
  return {m, std::sqrt(q / (n - 1) / n)};
}

}  // namespace

TEST_CASE("ensemble shape and grid") {
  const Kernel k = Kernel::exp_sum({1.0}, {2.0});
  const SimConfig c = config(16, 2, 3);
  for (Scheme s : {Scheme::splitting, Scheme::euler}) {
    const PathEnsemble e = simulate(ou_problem(k), c, BrownianDriver(c.seed), s);
    CHECK(e.scheme == s);
    CHECK(e.n_paths == 3);
    CHECK(e.n_steps == 16);
    REQUIRE(e.grid.size() == 16);
    CHECK(e.grid.front() == doctest::Approx(1.0 / 16));
    CHECK(e.grid.back() == 1.0);
    for (std::size_t i = 1; i < e.grid.size(); ++i) CHECK(e.grid[i] > e.grid[i - 1]);
    CHECK(e.values.size() == 48);
    CHECK(e.left_limits.size() == (s == Scheme::splitting ? 48u : 0u));
  }
}

TEST_CASE("zero coefficients reproduce the input curve") {
  const SveProblem p{InputCurve::power(0.7, 0.8), Kernel::exp_sum({1.0, 3.0}, {0.5, 4.0}), Coefficient::constant(0.0),
                     Coefficient::constant(0.0), 1.0};
  const SimConfig c = config(32, 3, 2);
  for (Scheme s : {Scheme::splitting, Scheme::euler}) {
    const PathEnsemble e = simulate(p, c, BrownianDriver(1), s);
    for (std::size_t i = 0; i < e.n_paths; ++i)
      for (std::size_t k = 0; k < e.n_steps; ++k) CHECK(e.at(i, k) == doctest::Approx(e.g_values[k]).epsilon(1e-14));
  }
}

TEST_CASE("splitting interleaving and jump representation") {
  const Kernel k = Kernel::exp_sum({1.0, 0.5, 2.0}, {0.3, 2.0, 9.0});
  const double k0 = k.meta().k0;
  const SveProblem p{InputCurve::power(1.0, 1.3), k, Coefficient::linear(0.5, -1.2), Coefficient::constant(0.4), 1.0};
  const SimConfig c = config(64, 4, 10);
  const PathEnsemble e = simulate_splitting(p, c, BrownianDriver(5));
  const double dt = c.T / c.N;
  for (std::size_t i = 0; i < e.n_paths; ++i) {
    std::vector<long double> incr(e.n_steps);
    for (std::size_t kk = 0; kk < e.n_steps; ++kk) {
      const double jump = e.at(i, kk) - e.left_row(i)[kk];
      incr[kk] = static_cast<long double>(jump) / k0;
      // X(t_k) = g(t_k) + sum_{l <= k} K(t_k - t_l) I_l with K(0) read as K(0+)
      long double recon = e.g_values[kk];
      for (std::size_t l = 0; l <= kk; ++l)
        recon += incr[l] * (l == kk ? k0 : k(static_cast<double>(kk - l) * dt));
      const double scale = std::max(1.0, std::abs(e.at(i, kk)));
      CHECK(std::abs(static_cast<double>(recon) - e.at(i, kk)) <= 1e-12 * scale);
      // left limit: same sum without the current jump
      const long double left = recon - incr[kk] * k0;
      CHECK(std::abs(static_cast<double>(left) - e.left_row(i)[kk]) <= 1e-12 * scale);
    }
  }
}

TEST_CASE("constant kernel splitting is classical Euler-Maruyama bit for bit") {
  const double cst = 1.7;
  const SveProblem p{InputCurve::constant(0.4), Kernel::exp_sum({cst}, {0.0}), Coefficient::linear(0.2, -0.8),
                     Coefficient::custom([](double, double x) { return 0.3 + 0.1 * std::sin(x); }, "s", 0.4, 0.0),
                     1.0};
  const SimConfig c = config(20, 5, 4);
  const BrownianDriver drv(77);
  const PathEnsemble e = simulate_splitting(p, c, drv);
  const std::size_t n = c.N * c.M;
  const double h = c.T / static_cast<double>(n);
  for (std::size_t path = 0; path < c.n_paths; ++path) {
    const auto dw = brownian_increments(drv, path, n, h);
    double x = 0.4;
    for (std::size_t j = 0; j < n; ++j) {
      const double s = static_cast<double>(j) * h;
      x += cst * p.b(s, x) * h + cst * p.sigma(s, x) * dw[j];
      if ((j + 1) % c.M == 0) CHECK(e.at(path, j / c.M) == x);
    }
  }
}

TEST_CASE("degenerate scheme has the exact distribution x + c B_T") {
  const double cst = 1.5;
  const SveProblem p{InputCurve::constant(0.2), Kernel::exp_sum({cst}, {0.0}), Coefficient::constant(0.0),
                     Coefficient::constant(1.0), 2.0};
  SimConfig c = config(1, 4, 100000);
  c.T = 2.0;
  const PathEnsemble e = simulate_splitting(p, c, BrownianDriver(3));
  double s = 0.0, q = 0.0;
  const double n = static_cast<double>(e.n_paths);
  for (std::size_t i = 0; i < e.n_paths; ++i) s += e.at(i, 0);
  const double m = s / n;
  for (std::size_t i = 0; i < e.n_paths; ++i) q += std::pow(e.at(i, 0) - m, 2);
  const double var = q / (n - 1);
  const double target = cst * cst * c.T;
  // sd of the sample variance of a normal: target sqrt(2/(n-1))
  CHECK(std::abs(var - target) <= 3.0 * target * std::sqrt(2.0 / (n - 1)));
}

TEST_CASE("deterministic ODE limit") {
  const double beta = -0.7;
  const SveProblem p{InputCurve::constant(1.0), Kernel::exp_sum({1.0}, {0.0}), Coefficient::linear(0.0, beta),
                     Coefficient::constant(0.0), 1.0};
  const PathEnsemble e = simulate_splitting(p, config(1024, 1, 1), BrownianDriver(1));
  CHECK(std::abs(e.at(0, 1023) - std::exp(beta)) <= 1e-3 * std::exp(beta));
}

TEST_CASE("classical OU mean under the Euler baseline") {
  const SveProblem p{InputCurve::constant(1.0), Kernel::exp_sum({1.0}, {0.0}), Coefficient::linear(0.0, -1.0),
                     Coefficient::constant(1.0), 1.0};
  const PathEnsemble e = simulate_euler(p, config(512, 1, 100000), BrownianDriver(8));
  const MeanSe r = last_column(e);
  // Euler bias (1 - 1/N)^N - e^{-1} is about 4e-4 here; allow it on top of 3 se
  CHECK(std::abs(r.mean - std::exp(-1.0)) <= 3.0 * r.se + 4e-4);
}

TEST_CASE("fractional OU mean under the Euler baseline") {
  const double alpha = 0.75;
  const SveProblem p{InputCurve::constant(1.0), Kernel::fractional(alpha), Coefficient::linear(0.0, -1.0),
                     Coefficient::constant(1.0), 1.0};
  const PathEnsemble e = simulate_euler(p, config(256, 1, 20000), BrownianDriver(12));
  const MeanSe r = last_column(e);
  const double exact = frac_ou_mean(1.0, alpha, 1.0, -1.0, 0.0, 1.0);
  const double bias = std::pow(256.0, -(alpha - 0.5));
  CHECK(std::abs(r.mean - exact) <= 3.0 * r.se + bias);
}

TEST_CASE("thread count does not change the output") {
  const SveProblem p = ou_problem(soe_from_fractional(0.7, 40, 1e-3, 1e4));
  SimConfig c = config(50, 3, 37);
  for (Scheme s : {Scheme::splitting, Scheme::euler}) {
    c.threads = 1;
    const PathEnsemble a = simulate(p, c, BrownianDriver(4), s);
    c.threads = 4;
    const PathEnsemble b = simulate(p, c, BrownianDriver(4), s);
    CHECK(a.values == b.values);
    CHECK(a.left_limits == b.left_limits);
  }
}

TEST_CASE("noise refinement aggregates the finer stream") {
  // N with refinement 2 sees the same Brownian path as 2N without
  const SveProblem p{InputCurve::constant(0.0), Kernel::exp_sum({1.0}, {0.0}), Coefficient::constant(0.0),
                     Coefficient::constant(1.0), 1.0};
  SimConfig coarse = config(8, 1, 3);
  coarse.noise_refinement = 2;
  const SimConfig fine = config(16, 1, 3);
  const PathEnsemble a = simulate_splitting(p, coarse, BrownianDriver(6));
  const PathEnsemble b = simulate_splitting(p, fine, BrownianDriver(6));
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t k = 0; k < 8; ++k) CHECK(a.at(i, k) == doctest::Approx(b.at(i, 2 * k + 1)).epsilon(1e-13));
}

TEST_CASE("both schemes consume the same noise") {
  // additive noise, K = 1, zero drift: both give g + B(t_k)
  const SveProblem p{InputCurve::constant(0.3), Kernel::exp_sum({1.0}, {0.0}), Coefficient::constant(0.0),
                     Coefficient::constant(1.0), 1.0};
  const SimConfig c = config(10, 3, 2);
  const PathEnsemble s = simulate_splitting(p, c, BrownianDriver(2));
  const PathEnsemble e = simulate_euler(p, c, BrownianDriver(2));
  for (std::size_t i = 0; i < s.values.size(); ++i) CHECK(s.values[i] == doctest::Approx(e.values[i]).epsilon(1e-13));
}

TEST_CASE("coupled runs and preconditions") {
  const Kernel k = soe_from_fractional(0.7, 40, 1e-3, 1e4);
  const SimConfig c = config(20, 2, 5);
  const auto [a, b] = simulate_coupled(ou_problem(k), ou_problem(k), c, BrownianDriver(1), Scheme::splitting);
  CHECK(a.values == b.values);

  CHECK_THROWS_AS(simulate_coupled(ou_problem(k), ou_problem(Kernel::exp_sum({1.0}, {1.0})), c, BrownianDriver(1),
                                   Scheme::splitting),
                  PreconditionError);
  SveProblem other = ou_problem(k);
  other.sigma = Coefficient::constant(0.9);
  CHECK_THROWS_AS(simulate_coupled(ou_problem(k), other, c, BrownianDriver(1), Scheme::euler), PreconditionError);

  CHECK_THROWS_AS(simulate_splitting(ou_problem(Kernel::fractional(0.7)), c, BrownianDriver(1)), PreconditionError);
  CHECK_THROWS_AS(simulate_splitting(ou_problem(Kernel::fractional(1.5)), c, BrownianDriver(1)), PreconditionError);
  CHECK_NOTHROW(simulate_euler(ou_problem(Kernel::fractional(0.7)), c, BrownianDriver(1)));
  SimConfig bad = c;
  bad.N = 0;
  CHECK_THROWS_AS(simulate_euler(ou_problem(k), bad, BrownianDriver(1)), ParameterError);
}
