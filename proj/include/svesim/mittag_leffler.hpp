#pragma once

#include <cstddef>
#include <optional>

namespace svesim {

enum class MlMethod { series, contour, asymptotic };

const char* ml_method_name(MlMethod m);

/// 1/Gamma(x) for real x, zero at the poles of Gamma.
double rgamma(double x);

struct MlResult {
  double value = 0.0;
  double error_estimate = 0.0;  ///< absolute, heuristic
  MlMethod method = MlMethod::series;
  bool accuracy_warning = false;
};

/// Two-parameter Mittag-Leffler function E_{alpha,beta}(z) for real z,
/// alpha in (0, 2], beta > 0.
///   z >= -1        : power series, summed in log space with compensation
///   -50 <= z < -1  : optimal parabolic-contour inversion of the Laplace
///                    transform s^{alpha-beta} / (s^alpha - z)
///   z < -50        : asymptotic expansion -sum z^{-k} / Gamma(beta - alpha k)
///                    (plus pole residues when alpha > 1), optimally truncated;
///                    falls back to the contour method when the first omitted
///                    term exceeds 1e-13.
MlResult mittag_leffler(double alpha, double beta, double z);

/// Value only.
double ml(double alpha, double beta, double z);

/// The three evaluators with the method forced, for crossover checks.
MlResult ml_series(double alpha, double beta, double z);
MlResult ml_contour(double alpha, double beta, double z);
MlResult ml_asymptotic(double alpha, double beta, double z);

inline constexpr double kMlSeriesLimit = -1.0;
inline constexpr double kMlAsymptoticLimit = -50.0;
inline constexpr double kMlNegativeThreshold = -1e-6;

struct SignReport {
  std::optional<double> first_negative_t;
  double min_value = 0.0;
  double t_at_min = 0.0;
};

/// Scans E_{alpha,beta}(-lam t^alpha) on n_grid geometrically spaced points
/// in [t_max * 1e-6, t_max]. A value below -1e-6 counts as negative.
SignReport ml_sign_scan(double alpha, double beta, double t_max, std::size_t n_grid, double lam = 1.0);

struct LaplaceCheck {
  double numeric = 0.0;
  double analytic = 0.0;
  double tail_bound = 0.0;  ///< crude bound on the neglected integral over [T_trunc, inf)
  bool accuracy_warning = false;
};

/// int_0^T t^{gamma-1} E_{alpha,gamma}(-lam t^alpha) e^{-s t} dt against
/// s^{alpha-gamma} / (s^alpha + lam).
LaplaceCheck laplace_identity_check(double alpha, double gamma, double lam, double s, double T_trunc);

/// Mean of the fractional Ornstein-Uhlenbeck process
/// x t^{gamma0-1} E_{alpha,gamma0}(beta t^alpha) + b int_0^t s^{alpha-1} E_{alpha,alpha}(beta s^alpha) ds.
double frac_ou_mean(double x, double alpha, double gamma0, double beta, double b, double t);

}  // namespace svesim
