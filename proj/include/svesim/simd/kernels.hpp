#pragma once

#include <cstddef>
#include <span>
#include <string_view>

// Data-parallel inner loops used by the path simulators and the ensemble
// statistics. Every routine has a scalar reference version; vector variants
// are compiled per ISA and chosen at runtime by the dispatcher.
namespace svesim::simd {

enum class Isa { scalar, avx2, neon };

std::string_view isa_name(Isa isa);

/// Best ISA supported by both this build and the running CPU.
Isa detected_isa();

/// ISA currently used by the dispatched entry points below.
Isa active_isa();

/// Forces a specific ISA (tests and benchmarks). Throws std::invalid_argument
/// if the ISA is not available on this machine or build.
void set_active_isa(Isa isa);

bool isa_available(Isa isa);

/// Compensated dot product (Ogita-Rump-Oishi Dot2): the result is as accurate
/// as if computed in twice the working precision, then rounded once.
/// Summation order is fixed for a given ISA, so results are reproducible.
double dot(std::span<const double> a, std::span<const double> b);

/// acc[i] += row[i] and acc_sq[i] += row[i]*row[i] (no FMA contraction, so all
/// variants agree bit for bit).
void accumulate_moments(std::span<const double> row, std::span<double> acc, std::span<double> acc_sq);

/// out[i] = a[i] - b[i].
void subtract(std::span<const double> a, std::span<const double> b, std::span<double> out);

// Per-ISA entry points. Pointers must reference n valid elements.
namespace scalar {
double dot2(const double* a, const double* b, std::size_t n);
void accumulate_moments(const double* row, double* acc, double* acc_sq, std::size_t n);
void subtract(const double* a, const double* b, double* out, std::size_t n);
}  // namespace scalar

namespace avx2 {
double dot2(const double* a, const double* b, std::size_t n);
void accumulate_moments(const double* row, double* acc, double* acc_sq, std::size_t n);
void subtract(const double* a, const double* b, double* out, std::size_t n);
}  // namespace avx2

namespace neon {
double dot2(const double* a, const double* b, std::size_t n);
void accumulate_moments(const double* row, double* acc, double* acc_sq, std::size_t n);
void subtract(const double* a, const double* b, double* out, std::size_t n);
}  // namespace neon

}  // namespace svesim::simd
