#include "svesim/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "svesim/errors.hpp"
#include "svesim/mittag_leffler.hpp"
#include "svesim/quadrature.hpp"
#include "svesim/simd/kernels.hpp"

namespace svesim {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double ls_slope(const std::vector<double>& x, const std::vector<double>& y) {
  const double n = static_cast<double>(x.size());
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

// Sliding-window modulus: max |v_j - v_i| over 0 < j - i <= w.
double window_modulus(const std::vector<double>& v, std::size_t w) {
  double out = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i)
    for (std::size_t j = i + 1; j < v.size() && j - i <= w; ++j) out = std::max(out, std::abs(v[j] - v[i]));
  return out;
}

}  // namespace

ComparisonReport comparison_report(const PathEnsemble& e1, const PathEnsemble& e2, double delta) {
  if (!(delta >= 0.0)) throw ParameterError("comparison_report: delta must be >= 0");
  if (e1.n_paths != e2.n_paths || e1.n_steps != e2.n_steps || e1.grid != e2.grid)
    throw PreconditionError("comparison_report: ensembles are not aligned");
  if (e1.n_paths == 0) throw PreconditionError("comparison_report: empty ensembles");
  const std::size_t n = e1.n_steps;
  ComparisonReport rep;
  rep.n_paths = e1.n_paths;
  rep.delta = delta;
  rep.grid = e1.grid;

  // moments of d - d_0, with d_0 the first path's difference, so that the
  // variance does not lose digits when all paths agree
  std::vector<double> shift(n), d(n), acc(n, 0.0), acc_sq(n, 0.0);
  simd::subtract(e2.row(0), e1.row(0), shift);
  for (std::size_t path = 0; path < e1.n_paths; ++path) {
    simd::subtract(e2.row(path), e1.row(path), d);
    const double worst = -*std::min_element(d.begin(), d.end());
    rep.max_exceedance = std::max(rep.max_exceedance, worst);
    if (worst > delta) ++rep.n_violating;
    simd::subtract(d, shift, d);
    simd::accumulate_moments(d, acc, acc_sq);
  }
  rep.violation_fraction = static_cast<double>(rep.n_violating) / static_cast<double>(rep.n_paths);
  const double np = static_cast<double>(rep.n_paths);
  rep.per_time_means.resize(n);
  rep.per_time_se.resize(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double m = acc[k] / np;
    rep.per_time_means[k] = shift[k] + m;
    const double var = rep.n_paths > 1 ? std::max(0.0, (acc_sq[k] - np * m * m) / (np - 1.0)) : 0.0;
    rep.per_time_se[k] = std::sqrt(var / np);
  }
  return rep;
}

BoundComponents bound_components(const InputCurve& g, const Kernel& k, const std::function<double(double)>& C_fn,
                                 double T, std::size_t N, std::size_t n_grid) {
  if (N < 1) throw ParameterError("bound_components: N must be >= 1");
  if (!(T > 0.0)) throw ParameterError("bound_components: T must be positive");
  const double delta = T / static_cast<double>(N);
  const std::size_t m = std::max<std::size_t>(1, (n_grid + N - 1) / N);  // mesh points per delta
  const double s = delta / static_cast<double>(m);
  BoundComponents out;

  {
    const bool sing = g.singular_at_zero();
    const std::size_t first = sing ? m : 0;  // start at t_1 when g is singular
    std::vector<double> v;
    for (std::size_t i = first; i <= N * m; ++i) v.push_back(eval_g(g, k, static_cast<double>(i) * s));
    out.omega_g = window_modulus(v, m);
  }
  {
    if (!std::isfinite(k.meta().k0)) {
      out.omega_K = kInf;
    } else {
      std::vector<double> v(N * m + 1);
      v[0] = k.meta().k0;
      for (std::size_t i = 1; i <= N * m; ++i) v[i] = k(static_cast<double>(i) * s);
      out.omega_K = window_modulus(v, m);
    }
  }
  if (C_fn) {
    const auto& rule = quad::gauss_legendre(16);
    for (std::size_t i = 0; i < N; ++i) {
      const double a = static_cast<double>(i) * delta;
      const double v = quad::integrate([&](double t) { const double c = C_fn(t); return c * c; }, a, a + delta, rule);
      out.sup_C2 = std::max(out.sup_C2, v);
    }
  }
  return out;
}

ConvergenceReport strong_error(const SveProblem& p, const SimConfig& c_base, const std::vector<std::size_t>& Ns,
                               std::size_t ref_factor, double t_eval, Scheme scheme) {
  c_base.validate();
  if (Ns.empty()) throw ParameterError("strong_error: empty resolution list");
  if (ref_factor < 1) throw ParameterError("strong_error: ref_factor must be >= 1");
  for (std::size_t i = 1; i < Ns.size(); ++i)
    if (!(Ns[i] > Ns[i - 1])) throw PreconditionError("strong_error: Ns must be strictly increasing");
  const std::size_t n_ref = ref_factor * Ns.back();
  for (std::size_t N : Ns)
    if (N == 0 || n_ref % N != 0) throw PreconditionError("strong_error: every N must divide ref_factor * max(Ns)");

  const auto index_of = [&](std::size_t N) {
    const double pos = t_eval * static_cast<double>(N) / p.T;
    const double r = std::round(pos);
    if (std::abs(pos - r) > 1e-9 || r < 1.0 || r > static_cast<double>(N))
      throw PreconditionError("strong_error: t_eval is not a grid point at N = " + std::to_string(N));
    return static_cast<std::size_t>(r) - 1;
  };

  const BrownianDriver drv(c_base.seed);
  SimConfig cref = c_base;
  cref.T = p.T;
  cref.N = n_ref;
  const PathEnsemble ref = simulate(p, cref, drv, scheme);
  const std::size_t kref = index_of(n_ref);

  ConvergenceReport rep;
  rep.Ns = Ns;
  rep.N_ref = n_ref;
  rep.t_eval = t_eval;
  std::vector<double> lx, ly;
  for (std::size_t N : Ns) {
    SimConfig c = c_base;
    c.T = p.T;
    c.N = N;
    c.noise_refinement = c_base.noise_refinement * (n_ref / N);
    const PathEnsemble e = simulate(p, c, drv, scheme);
    const std::size_t k = index_of(N);
    double s = 0.0, s2 = 0.0;
    for (std::size_t path = 0; path < c.n_paths; ++path) {
      const double d = e.at(path, k) - ref.at(path, kref);
      s += d * d;
      s2 += d * d * d * d;
    }
    const double np = static_cast<double>(c.n_paths);
    const double mean = s / np;
    rep.errors.push_back(mean);
    rep.errors_se.push_back(c.n_paths > 1 ? std::sqrt(std::max(0.0, (s2 / np - mean * mean) / (np - 1.0))) : 0.0);
    rep.components.push_back(bound_components(p.g, p.k, p.b.time_lipschitz_l2, p.T, N, 1024));
    if (mean > 0.0) {
      lx.push_back(std::log(static_cast<double>(N)));
      ly.push_back(std::log(mean));
    }
  }
  rep.fitted_rate = lx.size() >= 2 ? -ls_slope(lx, ly) : std::numeric_limits<double>::quiet_NaN();
  return rep;
}

ThetaResult theta_formula(double gamma, double eta, double xi, double q) {
  if (!(eta > 0.0)) throw ParameterError("theta_formula: eta must be positive");
  if (!(q > 0.0)) throw ParameterError("theta_formula: q must be positive");
  ThetaResult r;
  r.value = gamma + 0.5 * eta / (2.0 + eta) - (2.0 * xi / q) * (1.0 + 1.0 / eta);
  r.warning = !(r.value > 0.0);
  return r;
}

double empirical_holder(const PathEnsemble& e, const std::vector<double>& g_values, double p,
                        const std::vector<std::size_t>& lags) {
  if (!(p >= 2.0)) throw ParameterError("empirical_holder: p must be >= 2");
  if (lags.size() < 2) throw ParameterError("empirical_holder: need at least two lags");
  if (g_values.size() != e.n_steps) throw PreconditionError("empirical_holder: g_values length differs from the grid");
  for (std::size_t l : lags)
    if (l == 0 || l >= e.n_steps) throw RangeError("empirical_holder: lag outside the grid");
  const double dt = e.grid.size() > 1 ? e.grid[1] - e.grid[0] : e.grid[0];

  std::vector<double> lx, ly;
  std::vector<double> y(e.n_steps);
  for (std::size_t l : lags) {
    double s = 0.0;
    std::size_t count = 0;
    for (std::size_t path = 0; path < e.n_paths; ++path) {
      const auto row = e.row(path);
      for (std::size_t k = 0; k < e.n_steps; ++k) y[k] = row[k] - g_values[k];
      for (std::size_t k = 0; k + l < e.n_steps; ++k) s += std::pow(std::abs(y[k + l] - y[k]), p);
      count += e.n_steps - l;
    }
    const double m = s / static_cast<double>(count);
    if (!(m > 0.0)) throw EstimationError("empirical_holder: zero increments at lag " + std::to_string(l));
    lx.push_back(std::log(static_cast<double>(l) * dt));
    ly.push_back(std::log(m));
  }
  return ls_slope(lx, ly) / p;
}

Resolvent resolvent_second_kind(const std::function<double(double)>& F, double T, std::size_t n_grid) {
  if (n_grid < 16) throw ParameterError("resolvent_second_kind: n_grid must be >= 16");
  if (!(T > 0.0)) throw ParameterError("resolvent_second_kind: T must be positive");
  const std::size_t n = n_grid;
  const double h = T / static_cast<double>(n);

  double f0 = kInf;
  try {
    f0 = F(0.0);
  } catch (const std::exception&) {
    f0 = kInf;
  }
  const bool singular = !std::isfinite(f0);

  // A0_m = int F over [m h, (m+1) h], A1_m the same against (u - m h)/h
  std::vector<double> a0(n), a1(n);
  {
    quad::SingularOptions so;
    so.layers = 40;
    a0[0] = quad::integrate_singular(F, 0.0, h, so);
    a1[0] = quad::integrate_singular([&](double u) { return F(u) * u / h; }, 0.0, h, so);
    if (singular) {
      quad::SingularOptions coarse = so;
      coarse.layers = 20;
      const double a0c = quad::integrate_singular(F, 0.0, h, coarse);
      if (!std::isfinite(a0[0]) || std::abs(a0[0] - a0c) > 1e-6 * std::max(std::abs(a0[0]), 1e-300))
        throw DomainError("resolvent_second_kind: F does not appear integrable at 0");
    }
    const auto& rule = quad::gauss_legendre(8);
    for (std::size_t m = 1; m < n; ++m) {
      const double lo = static_cast<double>(m) * h;
      a0[m] = quad::integrate(F, lo, lo + h, rule);
      a1[m] = quad::integrate([&](double u) { return F(u) * (u - lo) / h; }, lo, lo + h, rule);
    }
  }
  std::vector<double> b(n), c(n + 1, 0.0);
  for (std::size_t m = 0; m < n; ++m) b[m] = a0[m] - a1[m];
  for (std::size_t m = 1; m < n; ++m) c[m] = a1[m - 1] + b[m];
  // c_rev[n - m] = c[m]
  std::vector<double> c_rev(n + 1);
  for (std::size_t m = 0; m <= n; ++m) c_rev[n - m] = c[m];

  Resolvent out;
  out.t.resize(n + 1);
  out.R.assign(n + 1, 0.0);
  for (std::size_t i = 0; i <= n; ++i) out.t[i] = static_cast<double>(i) * h;
  out.R[0] = f0;
  const double denom = 1.0 - b[0];

  if (!singular) {
    for (std::size_t i = 1; i <= n; ++i) {
      double s = F(out.t[i]) + out.R[0] * a1[i - 1];
      if (i > 1) s += simd::dot({c_rev.data() + (n - i + 1), i - 1}, {out.R.data() + 1, i - 1});
      out.R[i] = s / denom;
    }
    return out;
  }

  // first cell: R(s) ~ R_1 F(s) / F(h)
  const double fh = F(h);
  quad::SingularOptions so;
  so.layers = 30;
  // F(h - s) F(s) is symmetric about h/2
  const double q1 = 2.0 * quad::integrate_singular([&](double s) { return F(h - s) * F(s); }, 0.0, 0.5 * h, so);
  out.R[1] = F(h) / (1.0 - q1 / fh);
  for (std::size_t i = 2; i <= n; ++i) {
    const double ti = out.t[i];
    const double qi = quad::integrate_singular([&](double s) { return F(ti - s) * F(s); }, 0.0, h, so);
    double s = F(ti) + out.R[1] * (a1[i - 2] + qi / fh);
    if (i > 2) s += simd::dot({c_rev.data() + (n - i + 2), i - 2}, {out.R.data() + 2, i - 2});
    out.R[i] = s / denom;
  }
  return out;
}

CounterexampleReport counterexample_report(double alpha, double beta0, double x1, double x2, const SimConfig& c) {
  if (!(alpha > 1.0 && alpha < 2.0)) throw ParameterError("counterexample_report: alpha must lie in (1, 2)");
  if (!(beta0 > 0.0)) throw ParameterError("counterexample_report: beta0 must be positive");
  if (!(x2 >= x1)) throw ParameterError("counterexample_report: requires x2 >= x1");
  const Kernel k = Kernel::fractional(alpha);
  const Coefficient b = Coefficient::linear(0.0, -1.0);
  const Coefficient sigma = Coefficient::constant(1.0);
  const SveProblem p1{InputCurve::power(x1, beta0), k, b, sigma, c.T};
  const SveProblem p2{InputCurve::power(x2, beta0), k, b, sigma, c.T};
  const BrownianDriver drv(c.seed);
  const auto [e1, e2] = simulate_coupled(p1, p2, c, drv, Scheme::euler);
  const ComparisonReport cr = comparison_report(e1, e2, 0.0);

  CounterexampleReport rep;
  rep.grid = e1.grid;
  rep.mc_diff_mean = cr.per_time_means;
  rep.mc_diff_se = cr.per_time_se;
  rep.analytic_diff.resize(rep.grid.size());
  std::size_t within = 0;
  for (std::size_t i = 0; i < rep.grid.size(); ++i) {
    const double t = rep.grid[i];
    rep.analytic_diff[i] = x2 == x1 ? 0.0 : (x2 - x1) * std::pow(t, beta0 - 1.0) * ml(alpha, beta0, -std::pow(t, alpha));
    const double dev = std::abs(rep.mc_diff_mean[i] - rep.analytic_diff[i]);
    rep.max_abs_deviation = std::max(rep.max_abs_deviation, dev);
    if (dev <= 3.0 * rep.mc_diff_se[i]) ++within;
  }
  rep.fraction_within_3se = static_cast<double>(within) / static_cast<double>(rep.grid.size());
  const SignReport scan = ml_sign_scan(alpha, beta0, c.T, 2000);
  rep.scan_min_t = scan.t_at_min;
  std::size_t best = 0;
  for (std::size_t i = 1; i < rep.grid.size(); ++i)
    if (std::abs(rep.grid[i] - scan.t_at_min) < std::abs(rep.grid[best] - scan.t_at_min)) best = i;
  rep.scan_min_index = best;
  return rep;
}

}  // namespace svesim
