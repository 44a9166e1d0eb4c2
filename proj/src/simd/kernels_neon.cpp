#include <arm_neon.h>

#include "svesim/simd/kernels.hpp"

namespace svesim::simd::neon {

namespace {

inline void two_sum(double a, double b, double& s, double& e) {
  s = a + b;
  const double z = s - a;
  e = (a - (s - z)) + (b - z);
}

inline void two_sum(float64x2_t a, float64x2_t b, float64x2_t& s, float64x2_t& e) {
  s = vaddq_f64(a, b);
  const float64x2_t z = vsubq_f64(s, a);
  e = vaddq_f64(vsubq_f64(a, vsubq_f64(s, z)), vsubq_f64(b, z));
}

}  // namespace

double dot2(const double* a, const double* b, std::size_t n) {
  const std::size_t n2 = n & ~static_cast<std::size_t>(1);
  float64x2_t p = vdupq_n_f64(0.0);
  float64x2_t s = vdupq_n_f64(0.0);
  for (std::size_t i = 0; i < n2; i += 2) {
    const float64x2_t x = vld1q_f64(a + i);
    const float64x2_t y = vld1q_f64(b + i);
    const float64x2_t h = vmulq_f64(x, y);
    const float64x2_t r = vfmaq_f64(vnegq_f64(h), x, y);
    float64x2_t q;
    two_sum(p, h, p, q);
    s = vaddq_f64(s, vaddq_f64(q, r));
  }
  double pp = vgetq_lane_f64(p, 0);
  double ss = vgetq_lane_f64(s, 0);
  double q;
  two_sum(pp, vgetq_lane_f64(p, 1), pp, q);
  ss += q + vgetq_lane_f64(s, 1);
  for (std::size_t i = n2; i < n; ++i) {
    const double h = a[i] * b[i];
    const double r = __builtin_fma(a[i], b[i], -h);
    two_sum(pp, h, pp, q);
    ss += q + r;
  }
  return pp + ss;
}

void accumulate_moments(const double* row, double* acc, double* acc_sq, std::size_t n) {
  const std::size_t n2 = n & ~static_cast<std::size_t>(1);
  for (std::size_t i = 0; i < n2; i += 2) {
    const float64x2_t v = vld1q_f64(row + i);
    const float64x2_t v2 = vmulq_f64(v, v);
    vst1q_f64(acc + i, vaddq_f64(vld1q_f64(acc + i), v));
    vst1q_f64(acc_sq + i, vaddq_f64(vld1q_f64(acc_sq + i), v2));
  }
  for (std::size_t i = n2; i < n; ++i) {
    const double v = row[i];
    const double v2 = v * v;
    acc[i] += v;
    acc_sq[i] += v2;
  }
}

void subtract(const double* a, const double* b, double* out, std::size_t n) {
  const std::size_t n2 = n & ~static_cast<std::size_t>(1);
  for (std::size_t i = 0; i < n2; i += 2) vst1q_f64(out + i, vsubq_f64(vld1q_f64(a + i), vld1q_f64(b + i)));
  for (std::size_t i = n2; i < n; ++i) out[i] = a[i] - b[i];
}

}  // namespace svesim::simd::neon
