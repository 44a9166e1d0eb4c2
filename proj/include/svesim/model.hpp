#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "svesim/kernels.hpp"

namespace svesim {

using CoefFn = std::function<double(double t, double x)>;
using CurveFn = std::function<double(double t)>;

/// Drift or diffusion coefficient (t, x) -> f(t, x) with the metadata the
/// well-posedness and comparison results refer to.
struct Coefficient {
  std::shared_ptr<const CoefFn> fn;
  std::string name;                          ///< family and parameters, used for identity checks
  std::optional<double> lipschitz_const;     ///< global Lipschitz constant in x
  double growth_C = 1.0;                     ///< |f(t,x)| <= growth_C (1+|x|)^growth_xi
  double growth_xi = 1.0;
  std::optional<bool> monotone_nondecreasing_in_x;
  CurveFn time_lipschitz_l2;                 ///< C(t) of the time-regularity bound, may be empty

  double operator()(double t, double x) const { return (*fn)(t, x); }

  /// Same underlying function: identical handle, or identical non-empty name.
  bool same_as(const Coefficient& other) const;

  static Coefficient custom(CoefFn f, std::string name, double growth_C, double growth_xi);
  /// b0 + beta x.
  static Coefficient linear(double b0, double beta);
  static Coefficient constant(double c);
};

/// x t^{gamma0-1} / Gamma(gamma0).
struct SingularPart {
  double x = 0.0;
  double gamma0 = 1.0;
};

/// g(t) = x t^{gamma0-1}/Gamma(gamma0) + g_tilde(t) + (K * h)(t).
struct InputCurve {
  std::optional<SingularPart> singular;
  CurveFn g_tilde;                 ///< empty means 0
  bool g_tilde_nondecreasing = true;
  CurveFn h;                       ///< empty means no convolution part
  std::optional<double> delta_growth;
  std::string name;

  static InputCurve constant(double x);
  static InputCurve power(double x, double gamma0);

  /// The singular part only is unbounded at 0, and only when gamma0 < 1.
  bool singular_at_zero() const { return singular && singular->gamma0 < 1.0; }
};

struct SveProblem {
  InputCurve g;
  Kernel k;
  Coefficient b;
  Coefficient sigma;
  double T = 1.0;
};

/// Singular part + g_tilde(t) + int_0^t K(t-s) h(s) ds, the convolution by
/// Gauss-Legendre panels (n_quad points each) refined geometrically at both
/// ends of [0, t].
double eval_g(const InputCurve& g, const Kernel& k, double t, std::size_t n_quad = 16);

/// Values of g at each time, parallel-safe (pure).
std::vector<double> eval_g_grid(const InputCurve& g, const Kernel& k, const std::vector<double>& times,
                                std::size_t n_quad = 16);

/// Quintic transition: 1 on [-n, n], 0 outside [-(n+1), n+1], C^2.
double mollifier_cutoff(double x, std::size_t n);
/// (1 - y^2)^n / c_n on [-1, 1].
double mollifier_density(double y, std::size_t n);
/// c_n = int_{-1}^{1} (1 - y^2)^n dy via c_n = c_{n-1} 2n/(2n+1), c_0 = 2.
double mollifier_norm(std::size_t n);

/// f_n(t, x) = psi_n(x) int f(t, x - y) phi_n(y) dy. The growth constant of the
/// result is growth_C * 2^xi, which bounds f_n uniformly in n; the Lipschitz
/// constant is estimated by probing.
Coefficient mollify(const Coefficient& f, std::size_t n, std::size_t n_quad = 64);

struct CirCoefficients {
  Coefficient b;
  Coefficient sigma;
};

/// Rough CIR coefficients b(x) = lam sign(theta - x)|theta - x|^gamma1 and
/// sigma(x) = sigma0 |x|^gamma2. With n set, both powers are replaced by the
/// linear branch n^{1-gamma}|u| on |u| <= 1/n, which makes them globally
/// Lipschitz with sigma_n(0) = 0 and b_n(0) >= 0.
CirCoefficients cir_coefficients(double lam, double theta, double sigma0, double gamma1, double gamma2,
                                 std::optional<std::size_t> n = std::nullopt);

struct ProbeOptions {
  std::size_t probes = 2000;
  std::uint64_t seed = 1;
  double x_range = 20.0;
  double t_max = 1.0;
};

/// Largest |f(t,x) - f(t,y)| / |x - y| over random probe pairs.
double probe_lipschitz(const Coefficient& f, const ProbeOptions& opt);
/// Largest |f(t,x)| / (C (1+|x|)^xi) over random probes.
double probe_growth_ratio(const Coefficient& f, double C, double xi, const ProbeOptions& opt);

struct Clause {
  std::string name;
  bool applicable = true;
  bool passed = true;
  double margin = 0.0;  ///< positive when passed, in the clause's own units
  std::string detail;
};

struct AssumptionReport {
  std::vector<Clause> clauses;
  double gamma = 0.0;
  double xi = 0.0;
  bool all_passed() const;
};

/// Checks the standing assumption for p with integrability q and margin eta:
/// growth bound, g in L^q, the L^{2+eta} kernel modulus (log-log slope at
/// least gamma - 0.05), the condition on q, and its fractional form
/// q > xi alpha / (alpha - 1/2)^2 when the kernel is fractional with alpha < 1.
AssumptionReport check_assumption(const SveProblem& p, double q, double eta);

struct ComparabilityReport {
  bool comparable = true;
  bool g_tilde_ok = true;
  bool drift_ok = true;
  double worst_g_tilde_gap = 0.0;   ///< min of g_tilde_2 - g_tilde_1
  double worst_monotone_drop = 0.0; ///< min increment of g_tilde_2 - g_tilde_1 on sorted probes
  double worst_drift_gap = 0.0;     ///< min of b_2 + h_2 - b_1 - h_1
  std::optional<double> witness_t;
  std::optional<double> witness_x;
};

struct ComparableData {
  InputCurve g;
  Coefficient b;
};

/// Probe test of the comparability conditions on t in (0, t_max], x in
/// [-x_range, x_range]. A singular part must first be rewritten as a
/// convolution (singular_as_convolution).
ComparabilityReport comparable_check(const ComparableData& d1, const ComparableData& d2, const Kernel& k,
                                     std::size_t probes, std::uint64_t seed, double t_max = 10.0,
                                     double x_range = 10.0, double tol = 1e-12);

/// For K = Fractional(alpha): x t^{gamma0-1}/Gamma(gamma0) = K * h with
/// h(t) = x t^{gamma0-alpha-1}/Gamma(gamma0-alpha). Only a formal identity
/// when gamma0 < alpha, where h is not locally integrable.
InputCurve singular_as_convolution(const InputCurve& g, const Kernel& k);

}  // namespace svesim
