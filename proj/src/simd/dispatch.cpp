#include <atomic>
#include <stdexcept>
#include <string>

#include "svesim/simd/kernels.hpp"

namespace svesim::simd {

namespace {

bool cpu_has_avx2() {
#if defined(SVESIM_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

std::atomic<Isa>& active() {
  static std::atomic<Isa> isa{detected_isa()};
  return isa;
}

void require_same_size(std::size_t a, std::size_t b, const char* what) {
  if (a != b) throw std::invalid_argument(std::string(what) + ": length mismatch");
}

}  // namespace

std::string_view isa_name(Isa isa) {
  switch (isa) {
    case Isa::scalar: return "scalar";
    case Isa::avx2: return "avx2";
    case Isa::neon: return "neon";
  }
  return "unknown";
}

bool isa_available(Isa isa) {
  switch (isa) {
    case Isa::scalar: return true;
    case Isa::avx2: return cpu_has_avx2();
    case Isa::neon:
#ifdef SVESIM_HAVE_NEON
      return true;
#else
      return false;
#endif
  }
  return false;
}

Isa detected_isa() {
  if (isa_available(Isa::avx2)) return Isa::avx2;
  if (isa_available(Isa::neon)) return Isa::neon;
  return Isa::scalar;
}

Isa active_isa() { return active().load(std::memory_order_relaxed); }

void set_active_isa(Isa isa) {
  if (!isa_available(isa))
    throw std::invalid_argument("ISA '" + std::string(isa_name(isa)) + "' is not available on this machine");
  active().store(isa, std::memory_order_relaxed);
}

double dot(std::span<const double> a, std::span<const double> b) {
  require_same_size(a.size(), b.size(), "simd::dot");
  switch (active_isa()) {
#ifdef SVESIM_HAVE_AVX2
    case Isa::avx2: return avx2::dot2(a.data(), b.data(), a.size());
#endif
#ifdef SVESIM_HAVE_NEON
    case Isa::neon: return neon::dot2(a.data(), b.data(), a.size());
#endif
    default: return scalar::dot2(a.data(), b.data(), a.size());
  }
}

void accumulate_moments(std::span<const double> row, std::span<double> acc, std::span<double> acc_sq) {
  require_same_size(row.size(), acc.size(), "simd::accumulate_moments");
  require_same_size(row.size(), acc_sq.size(), "simd::accumulate_moments");
  switch (active_isa()) {
#ifdef SVESIM_HAVE_AVX2
    case Isa::avx2: return avx2::accumulate_moments(row.data(), acc.data(), acc_sq.data(), row.size());
#endif
#ifdef SVESIM_HAVE_NEON
    case Isa::neon: return neon::accumulate_moments(row.data(), acc.data(), acc_sq.data(), row.size());
#endif
    default: return scalar::accumulate_moments(row.data(), acc.data(), acc_sq.data(), row.size());
  }
}

void subtract(std::span<const double> a, std::span<const double> b, std::span<double> out) {
  require_same_size(a.size(), b.size(), "simd::subtract");
  require_same_size(a.size(), out.size(), "simd::subtract");
  switch (active_isa()) {
#ifdef SVESIM_HAVE_AVX2
    case Isa::avx2: return avx2::subtract(a.data(), b.data(), out.data(), a.size());
#endif
#ifdef SVESIM_HAVE_NEON
    case Isa::neon: return neon::subtract(a.data(), b.data(), out.data(), a.size());
#endif
    default: return scalar::subtract(a.data(), b.data(), out.data(), a.size());
  }
}

}  // namespace svesim::simd
