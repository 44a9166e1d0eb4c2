#include <doctest.h>

#include <cmath>

#include "svesim/brownian.hpp"
#include "svesim/errors.hpp"

using namespace svesim;

TEST_CASE("driver output is a pure function of seed, path and index") {
  const BrownianDriver a(42), b(42), c(43);
  CHECK(brownian_increments(a, 3, 100, 0.1) == brownian_increments(b, 3, 100, 0.1));
  CHECK(brownian_increments(a, 3, 100, 0.1) != brownian_increments(c, 3, 100, 0.1));
  CHECK(brownian_increments(a, 3, 100, 0.1) != brownian_increments(a, 4, 100, 0.1));
  // any window of the stream, odd or even start, reads the same variates
  const auto full = brownian_increments(a, 7, 64, 1.0);
  for (std::uint64_t start : {0u, 1u, 5u, 30u}) {
    const auto part = brownian_increments(a, 7, 17, 1.0, start);
    for (std::size_t i = 0; i < part.size(); ++i) CHECK(part[i] == full[start + i]);
  }
  for (std::uint64_t i = 0; i < 10; ++i) CHECK(a.normal(7, i) == full[i]);
  CHECK_THROWS_AS(brownian_increments(a, 0, 3, 0.0), ParameterError);
}

TEST_CASE("moments of the increments") {
  const BrownianDriver d(2024);
  const std::size_t n = 1000000;
  const auto x = brownian_increments(d, 0, n, 1.0);
  double s = 0.0;
  for (double v : x) s += v;
  CHECK(std::abs(s / n) <= 4e-3);

  const auto y = brownian_increments(d, 1, n, 0.25);
  double m = 0.0, q = 0.0;
  for (double v : y) m += v;
  m /= n;
  for (double v : y) q += (v - m) * (v - m);
  CHECK(std::abs(q / (n - 1) - 0.25) <= 0.0025);

  // fourth moment 3 dt^2 and no lag-one correlation
  double m4 = 0.0, c1 = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    m4 += std::pow(x[i], 4);
    if (i + 1 < n) c1 += x[i] * x[i + 1];
  }
  CHECK(std::abs(m4 / n - 3.0) <= 0.05);
  CHECK(std::abs(c1 / (n - 1)) <= 4e-3);
}
