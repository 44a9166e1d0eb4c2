#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "svesim/brownian.hpp"
#include "svesim/model.hpp"

namespace svesim {

struct SimConfig {
  double T = 1.0;
  std::size_t N = 64;        ///< outer steps, t_k = k T / N
  std::size_t M = 1;         ///< inner Euler-Maruyama sub-steps per outer step
  std::size_t n_paths = 1;
  std::uint64_t seed = 0;
  /// Each inner increment is the sum of this many finer driver increments.
  /// Runs at resolutions N and N r with the same N M r share one Brownian path.
  std::size_t noise_refinement = 1;
  std::size_t threads = 0;   ///< 0: hardware concurrency

  void validate() const;
};

enum class Scheme { splitting, euler };

const char* scheme_name(Scheme s);

struct PathEnsemble {
  Scheme scheme = Scheme::splitting;
  std::size_t n_paths = 0;
  std::size_t n_steps = 0;
  std::vector<double> grid;         ///< t_1 .. t_N
  std::vector<double> g_values;     ///< g(t_1) .. g(t_N)
  std::vector<double> values;       ///< row-major n_paths x n_steps
  std::vector<double> left_limits;  ///< same shape as values; splitting only

  double at(std::size_t path, std::size_t k) const { return values[path * n_steps + k]; }
  std::span<const double> row(std::size_t path) const {
    return {values.data() + path * n_steps, n_steps};
  }
  std::span<const double> left_row(std::size_t path) const {
    return {left_limits.data() + path * n_steps, n_steps};
  }
};

/// Splitting scheme: between grid points the state follows the SDE with drift
/// K(0+) b and diffusion K(0+) sigma, started from the left limit
/// g(t_k) + sum_{l<k} K(t_k - t_l) I_l, and I_k = (xi_end - left limit) / K(0+).
/// Requires 0 < K(0+) < inf.
PathEnsemble simulate_splitting(const SveProblem& p, const SimConfig& c, const BrownianDriver& drv);

/// Left-point Euler baseline
/// X_{t_k} = g(t_k) + sum_{l<k} K(t_k - t_l) [b(t_l, X_l) dt + sigma(t_l, X_l) dB_l],
/// with K(dt/2) in place of K(dt) when K(0+) is infinite, and g(dt/2) as the
/// state at t_0 when g is singular at 0. dB_l is the sum of the M inner
/// increments, so both schemes consume the same noise.
PathEnsemble simulate_euler(const SveProblem& p, const SimConfig& c, const BrownianDriver& drv);

PathEnsemble simulate(const SveProblem& p, const SimConfig& c, const BrownianDriver& drv, Scheme s);

/// Both problems on one driver; requires identical kernels and diffusions.
std::pair<PathEnsemble, PathEnsemble> simulate_coupled(const SveProblem& p1, const SveProblem& p2,
                                                       const SimConfig& c, const BrownianDriver& drv, Scheme s);

}  // namespace svesim
