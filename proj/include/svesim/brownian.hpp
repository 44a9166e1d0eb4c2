#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace svesim {

/// Counter-based Gaussian source: the variate for (path, index) is a pure
/// function of (seed, path, index), so any thread may generate any part of
/// any path in any order.
class BrownianDriver {
 public:
  explicit BrownianDriver(std::uint64_t seed) : seed_(seed) {}

  std::uint64_t seed() const { return seed_; }

  /// Standard normal variate number `index` of path `path`.
  double normal(std::uint64_t path, std::uint64_t index) const;

  /// out[i] = sqrt(dt) * normal(path, start + i), i < n.
  void increments(std::uint64_t path, std::uint64_t start, std::size_t n, double dt, double* out) const;

 private:
  std::uint64_t seed_;
};

/// n independent N(0, dt) variates of path `path_id`, starting at `start`.
std::vector<double> brownian_increments(const BrownianDriver& drv, std::uint64_t path_id, std::size_t n, double dt,
                                        std::uint64_t start = 0);

}  // namespace svesim
