#include "svesim/simd/kernels.hpp"

#include <cmath>

namespace svesim::simd::scalar {

namespace {

inline void two_sum(double a, double b, double& s, double& e) {
  s = a + b;
  const double z = s - a;
  e = (a - (s - z)) + (b - z);
}

}  // namespace

double dot2(const double* a, const double* b, std::size_t n) {
  double p = 0.0;
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double h = a[i] * b[i];
    const double r = std::fma(a[i], b[i], -h);
    double q;
    two_sum(p, h, p, q);
    s += q + r;
  }
  return p + s;
}

void accumulate_moments(const double* row, double* acc, double* acc_sq, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    const double v = row[i];
    const double v2 = v * v;
    acc[i] += v;
    acc_sq[i] += v2;
  }
}

void subtract(const double* a, const double* b, double* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = a[i] - b[i];
}

}  // namespace svesim::simd::scalar
