// Compiled with -mavx2 -mfma. Only raw pointers and intrinsics here: no
// inline standard-library templates may be instantiated in this unit.
#include <immintrin.h>

#include "svesim/simd/kernels.hpp"

namespace svesim::simd::avx2 {

namespace {

inline void two_sum(double a, double b, double& s, double& e) {
  s = a + b;
  const double z = s - a;
  e = (a - (s - z)) + (b - z);
}

inline void two_sum(__m256d a, __m256d b, __m256d& s, __m256d& e) {
  s = _mm256_add_pd(a, b);
  const __m256d z = _mm256_sub_pd(s, a);
  e = _mm256_add_pd(_mm256_sub_pd(a, _mm256_sub_pd(s, z)), _mm256_sub_pd(b, z));
}

}  // namespace

double dot2(const double* a, const double* b, std::size_t n) {
  const std::size_t n4 = n & ~static_cast<std::size_t>(3);
  __m256d p = _mm256_setzero_pd();
  __m256d s = _mm256_setzero_pd();
  for (std::size_t i = 0; i < n4; i += 4) {
    const __m256d x = _mm256_loadu_pd(a + i);
    const __m256d y = _mm256_loadu_pd(b + i);
    const __m256d h = _mm256_mul_pd(x, y);
    const __m256d r = _mm256_fmsub_pd(x, y, h);
    __m256d q;
    two_sum(p, h, p, q);
    s = _mm256_add_pd(s, _mm256_add_pd(q, r));
  }
  alignas(32) double lp[4];
  alignas(32) double ls[4];
  _mm256_store_pd(lp, p);
  _mm256_store_pd(ls, s);

  // fold lanes in a fixed order, then finish the tail as the scalar kernel does
  double pp = lp[0];
  double ss = ls[0];
  for (int l = 1; l < 4; ++l) {
    double q;
    two_sum(pp, lp[l], pp, q);
    ss += q + ls[l];
  }
  for (std::size_t i = n4; i < n; ++i) {
    const double h = a[i] * b[i];
    const double r = _mm_cvtsd_f64(_mm_fmsub_sd(_mm_set_sd(a[i]), _mm_set_sd(b[i]), _mm_set_sd(h)));
    double q;
    two_sum(pp, h, pp, q);
    ss += q + r;
  }
  return pp + ss;
}

void accumulate_moments(const double* row, double* acc, double* acc_sq, std::size_t n) {
  const std::size_t n4 = n & ~static_cast<std::size_t>(3);
  for (std::size_t i = 0; i < n4; i += 4) {
    const __m256d v = _mm256_loadu_pd(row + i);
    const __m256d v2 = _mm256_mul_pd(v, v);
    _mm256_storeu_pd(acc + i, _mm256_add_pd(_mm256_loadu_pd(acc + i), v));
    _mm256_storeu_pd(acc_sq + i, _mm256_add_pd(_mm256_loadu_pd(acc_sq + i), v2));
  }
  for (std::size_t i = n4; i < n; ++i) {
    const double v = row[i];
    const double v2 = v * v;
    acc[i] += v;
    acc_sq[i] += v2;
  }
}

void subtract(const double* a, const double* b, double* out, std::size_t n) {
  const std::size_t n4 = n & ~static_cast<std::size_t>(3);
  for (std::size_t i = 0; i < n4; i += 4)
    _mm256_storeu_pd(out + i, _mm256_sub_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i)));
  for (std::size_t i = n4; i < n; ++i) out[i] = a[i] - b[i];
}

}  // namespace svesim::simd::avx2
