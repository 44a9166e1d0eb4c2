#pragma once

#include <cstdint>
#include <limits>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace svesim {

/// Regularity metadata of a convolution kernel.
struct KernelMeta {
  double k0 = 0.0;  ///< K(0+), may be +inf
  double gamma = 0.5;  ///< Hoelder modulus exponent, in (0, 1/2]
  double eta = 1.0;    ///< integrability margin: K in L^{2+eta}
  bool nonincreasing = false;
  bool completely_monotone = false;
};

/// Volterra convolution kernel t -> K(t) on (0, inf). Immutable value type.
class Kernel {
 public:
  struct Fractional {
    double alpha;
  };
  struct ExpSum {
    std::vector<double> weights;
    std::vector<double> rates;
  };
  struct Shifted {
    std::shared_ptr<const Kernel> base;
    double eps;
  };
  struct Tabulated {
    std::vector<double> grid;  // strictly increasing, grid.front() == 0
    std::vector<double> values;
  };
  using Variant = std::variant<Fractional, ExpSum, Shifted, Tabulated>;

  /// t^{alpha-1} / Gamma(alpha), alpha in (1/2, 2).
  static Kernel fractional(double alpha);
  /// sum_i w_i exp(-r_i t) with w_i, r_i >= 0. An empty list is the zero kernel.
  static Kernel exp_sum(std::vector<double> weights, std::vector<double> rates);
  /// Piecewise linear interpolation of samples; defined on [0, grid.back()].
  static Kernel tabulated(std::vector<double> grid, std::vector<double> values);

  /// K(t). Throws DomainError for t <= 0 on singular kernels (t < 0 always),
  /// RangeError outside a tabulated range.
  double operator()(double t) const;

  const KernelMeta& meta() const { return meta_; }
  const Variant& variant() const { return variant_; }

  bool is_fractional() const { return std::holds_alternative<Fractional>(variant_); }
  bool is_exp_sum() const { return std::holds_alternative<ExpSum>(variant_); }

  /// Short human-readable form, e.g. "fractional(alpha=0.7)".
  std::string describe() const;

 private:
  Kernel(Variant v, KernelMeta m) : variant_(std::move(v)), meta_(m) {}
  friend Kernel shift(const Kernel& k, double eps);

  Variant variant_;
  KernelMeta meta_;
};

struct HolderParams {
  double gamma;
  double eta;
};

/// (gamma, eta) of the kernel's L^{2+eta} modulus. Fractional(alpha < 1):
/// gamma = alpha - 1 + 1/(2+eta) with eta in (0, (2 alpha - 1)/(1 - alpha));
/// bounded kernels: gamma = 1/(2+eta).
HolderParams holder_params(const Kernel& k, double eta_choice);

struct LpModulus {
  double norm_head;   ///< ||K||_{L^p([0,h])}
  double norm_shift;  ///< ||K(.+h) - K||_{L^p([0,T])}
};

/// Both terms of the kernel regularity condition, by composite Gauss-Legendre
/// quadrature on a power-graded mesh (exponent 2/(2 alpha - 1) for singular
/// fractional kernels). n_grid is the number of panels.
LpModulus modulus_l2(const Kernel& k, double T, double h, double p, std::size_t n_grid);

/// Sum-of-exponentials approximation of the fractional kernel from its
/// Bernstein density rho^{-alpha} / (Gamma(alpha) Gamma(1 - alpha)),
/// integrated exactly over cells of a geometric grid on [rho_min, rho_max].
/// Node j sits at the geometric centre of cell j, except the lowest cell,
/// which absorbs the density on [0, rho_min] and sits at its mean rate.
Kernel soe_from_fractional(double alpha, std::size_t n_nodes, double rho_min, double rho_max);

/// Structural equality: same variant with identical parameters.
bool same_kernel(const Kernel& a, const Kernel& b);

/// Drops every exponential with rate > H.
Kernel bernstein_truncate(const Kernel& k, double H);

/// t -> K(t + eps).
Kernel shift(const Kernel& k, double eps);

/// K(j dt) for j = 1..n-1 and K(0+) in slot 0. This is the lag table the
/// path simulators convolve against.
std::vector<double> lag_table(const Kernel& k, double dt, std::size_t n);

enum class PropertyVerdict { no_violation_found, violation_found };

struct NonnegWitness {
  std::vector<double> times;
  std::vector<double> x;
  bool with_forcing = false;  ///< f != 0 (extended lemma) vs f == 0
  double probe_t = 0.0;
  double value = 0.0;
};

struct PropertyReport {
  std::size_t trials = 0;
  std::size_t probes = 0;
  std::size_t violations = 0;     ///< trials with at least one violating probe
  double worst_value = 0.0;       ///< most negative normalised probe value seen
  PropertyVerdict verdict = PropertyVerdict::no_violation_found;
  std::optional<NonnegWitness> witness;
};

struct NonnegCheckOptions {
  std::size_t n_points = 8;     ///< max atoms N per instance
  std::size_t n_trials = 1000;
  std::size_t t_probes = 64;    ///< random probe times per instance
  std::uint64_t seed = 1;
  double tol = 1e-12;
  double horizon = 0.0;         ///< atoms in (0, horizon); 0 selects a default
};

/// Randomised falsification test of the discrete non-negativity implication,
/// plus its extension with a non-decreasing forcing f >= 0. Each instance
/// picks N <= n_points atom times and builds x from prescribed partial sums
/// s_k >= 0 (half of them exactly zero) by the triangular recursion
/// x_k = (s_k - f(t_k) - sum_{l<k} x_l K(t_k - t_l)) / K(0+), so the premise
/// holds by construction. A probe is a violation when its value is below
/// -tol * max(1, sum of absolute terms). Requires 0 < K(0+) < inf.
PropertyReport check_nonneg_preserving(const Kernel& k, const NonnegCheckOptions& opt);

}  // namespace svesim
