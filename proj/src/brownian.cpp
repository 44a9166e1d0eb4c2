#include "svesim/brownian.hpp"

#include <cmath>
#include <numbers>

#include "svesim/errors.hpp"

namespace svesim {

namespace {

constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

// uniform on (0, 1]
double to_unit(std::uint64_t h) { return (static_cast<double>(h >> 11) + 1.0) * 0x1.0p-53; }

std::uint64_t path_key(std::uint64_t seed, std::uint64_t path) { return mix64(seed ^ mix64(path + kGolden)); }

// Box-Muller pair for counter `pair` of a path.
void normal_pair(std::uint64_t key, std::uint64_t pair, double& z0, double& z1) {
  const double u1 = to_unit(mix64(key + (2 * pair + 1) * kGolden));
  const double u2 = to_unit(mix64(key + (2 * pair + 2) * kGolden));
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double a = 2.0 * std::numbers::pi * u2;
  z0 = r * std::cos(a);
  z1 = r * std::sin(a);
}

}  // namespace

double BrownianDriver::normal(std::uint64_t path, std::uint64_t index) const {
  double z0, z1;
  normal_pair(path_key(seed_, path), index / 2, z0, z1);
  return (index % 2 == 0) ? z0 : z1;
}

void BrownianDriver::increments(std::uint64_t path, std::uint64_t start, std::size_t n, double dt,
                                double* out) const {
  if (!(dt > 0.0)) throw ParameterError("brownian increments: dt must be positive");
  const std::uint64_t key = path_key(seed_, path);
  const double sd = std::sqrt(dt);
  std::size_t i = 0;
  std::uint64_t idx = start;
  double z0, z1;
  if (idx % 2 == 1 && n > 0) {
    normal_pair(key, idx / 2, z0, z1);
    out[i++] = sd * z1;
    ++idx;
  }
  for (; i + 1 < n; i += 2, idx += 2) {
    normal_pair(key, idx / 2, z0, z1);
    out[i] = sd * z0;
    out[i + 1] = sd * z1;
  }
  if (i < n) {
    normal_pair(key, idx / 2, z0, z1);
    out[i] = sd * z0;
  }
}

std::vector<double> brownian_increments(const BrownianDriver& drv, std::uint64_t path_id, std::size_t n, double dt,
                                        std::uint64_t start) {
  std::vector<double> out(n);
  drv.increments(path_id, start, n, dt, out.data());
  return out;
}

}  // namespace svesim
