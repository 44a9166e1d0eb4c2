#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <vector>

#include "svesim/schemes.hpp"

namespace svesim {

struct ComparisonReport {
  std::size_t n_paths = 0;
  std::size_t n_violating = 0;
  double violation_fraction = 0.0;  ///< paths with max_k (X1 - X2)(t_k) > delta
  double max_exceedance = 0.0;      ///< max over paths and times of (X1 - X2)^+
  double delta = 0.0;
  std::vector<double> grid;
  std::vector<double> per_time_means;  ///< mean of X2 - X1
  std::vector<double> per_time_se;     ///< standard error of that mean
};

/// Ordering statistics of two path-aligned ensembles.
ComparisonReport comparison_report(const PathEnsemble& e1, const PathEnsemble& e2, double delta = 0.0);

struct BoundComponents {
  double omega_g = 0.0;
  double omega_K = 0.0;
  double sup_C2 = 0.0;
};

/// Moduli of continuity omega_g(T/N) and omega_K(T/N) on a uniform mesh of
/// about n_grid points (on [t_1, T] for g when g is singular at 0; K(0) read
/// as K(0+)), and sup_k int_{t_{k-1}}^{t_k} C(s)^2 ds.
BoundComponents bound_components(const InputCurve& g, const Kernel& k, const std::function<double(double)>& C_fn,
                                 double T, std::size_t N, std::size_t n_grid);

struct ConvergenceReport {
  std::vector<std::size_t> Ns;
  std::size_t N_ref = 0;
  double t_eval = 0.0;
  std::vector<double> errors;  ///< mean square difference to the reference at t_eval
  std::vector<double> errors_se;
  double fitted_rate = 0.0;    ///< minus the least-squares slope of log error against log N
  std::vector<BoundComponents> components;
};

/// Self-convergence study: each N against a run at N_ref = ref_factor max(Ns)
/// on the same Brownian path (inner increments aggregated from the finest
/// level). t_eval must be a grid point of every resolution.
ConvergenceReport strong_error(const SveProblem& p, const SimConfig& c_base, const std::vector<std::size_t>& Ns,
                               std::size_t ref_factor, double t_eval, Scheme scheme = Scheme::splitting);

struct ThetaResult {
  double value = 0.0;
  bool warning = false;  ///< value <= 0: no Hoelder regularity guaranteed
};

/// gamma + eta / (2 (2 + eta)) - (2 xi / q)(1 + 1/eta).
ThetaResult theta_formula(double gamma, double eta, double xi, double q);

/// Slope of log E|Y_{t+l} - Y_t|^p against log l, divided by p, for
/// Y = X - g on the ensemble grid. Lags are in grid steps.
double empirical_holder(const PathEnsemble& e, const std::vector<double>& g_values, double p,
                        const std::vector<std::size_t>& lags);

struct Resolvent {
  std::vector<double> t;  ///< 0, h, ..., T
  std::vector<double> R;  ///< R(t_i); R(0) = F(0) may be +inf
};

/// R = F + F * R on [0, T] by product integration with R piecewise linear
/// (on the first cell R is taken proportional to F when F is singular at 0).
Resolvent resolvent_second_kind(const std::function<double(double)>& F, double T, std::size_t n_grid);

struct CounterexampleReport {
  std::vector<double> grid;
  std::vector<double> analytic_diff;
  std::vector<double> mc_diff_mean;
  std::vector<double> mc_diff_se;
  double scan_min_t = 0.0;        ///< location of the minimum of E(-t^alpha) on the scan grid
  std::size_t scan_min_index = 0; ///< nearest ensemble grid point
  double fraction_within_3se = 0.0;
  double max_abs_deviation = 0.0; ///< max |mc mean - analytic|
};

/// X^i = x_i t^{beta0-1}/Gamma(beta0) - K * X^i + K * dB with K = Fractional(alpha),
/// simulated as a coupled Euler pair, against (x2 - x1) t^{beta0-1} E_{alpha,beta0}(-t^alpha).
CounterexampleReport counterexample_report(double alpha, double beta0, double x1, double x2, const SimConfig& c);

}  // namespace svesim
