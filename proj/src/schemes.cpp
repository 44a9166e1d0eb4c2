#include "svesim/schemes.hpp"

#include <cmath>
#include <string>

#include "parallel.hpp"
#include "svesim/errors.hpp"
#include "svesim/simd/kernels.hpp"

namespace svesim {

namespace {

std::vector<double> make_grid(const SimConfig& c) {
  std::vector<double> grid(c.N);
  for (std::size_t k = 0; k < c.N; ++k) grid[k] = static_cast<double>(k + 1) * c.T / static_cast<double>(c.N);
  return grid;
}

// Inner increments of outer step k (0-based): M values, each the sum of
// `noise_refinement` driver increments.
class InnerNoise {
 public:
  InnerNoise(const BrownianDriver& drv, const SimConfig& c, double h)
      : drv_(drv), m_(c.M), r_(c.noise_refinement), h_(h), fine_(c.M * c.noise_refinement) {}

  void fill(std::uint64_t path, std::size_t k, double* out) {
    const std::uint64_t start = static_cast<std::uint64_t>(k) * m_ * r_;
    if (r_ == 1) {
      drv_.increments(path, start, m_, h_, out);
      return;
    }
    drv_.increments(path, start, fine_.size(), h_ / static_cast<double>(r_), fine_.data());
    for (std::size_t j = 0; j < m_; ++j) {
      double s = 0.0;
      for (std::size_t i = 0; i < r_; ++i) s += fine_[j * r_ + i];
      out[j] = s;
    }
  }

 private:
  const BrownianDriver& drv_;
  std::size_t m_;
  std::size_t r_;
  double h_;
  std::vector<double> fine_;
};

}  // namespace

void SimConfig::validate() const {
  if (!(T > 0.0) || !std::isfinite(T)) throw ParameterError("SimConfig: T must be positive");
  if (N < 1) throw ParameterError("SimConfig: N must be >= 1");
  if (M < 1) throw ParameterError("SimConfig: M must be >= 1");
  if (n_paths < 1) throw ParameterError("SimConfig: n_paths must be >= 1");
  if (noise_refinement < 1) throw ParameterError("SimConfig: noise_refinement must be >= 1");
}

const char* scheme_name(Scheme s) { return s == Scheme::splitting ? "splitting" : "euler"; }

PathEnsemble simulate_splitting(const SveProblem& p, const SimConfig& c, const BrownianDriver& drv) {
  c.validate();
  const double k0 = p.k.meta().k0;
  if (!std::isfinite(k0))
    throw PreconditionError("splitting scheme needs a finite K(0+); approximate the kernel first "
                            "(soe_from_fractional, then bernstein_truncate)");
  if (!(k0 > 0.0)) throw PreconditionError("splitting scheme needs K(0+) > 0; use the Euler scheme instead");

  const std::size_t N = c.N;
  const std::size_t M = c.M;
  const double dt = c.T / static_cast<double>(N);
  const double h = c.T / static_cast<double>(N * M);

  PathEnsemble e;
  e.scheme = Scheme::splitting;
  e.n_paths = c.n_paths;
  e.n_steps = N;
  e.grid = make_grid(c);
  e.g_values = eval_g_grid(p.g, p.k, e.grid);
  e.values.assign(c.n_paths * N, 0.0);
  e.left_limits.assign(c.n_paths * N, 0.0);

  // dk_rev[N-1-j] = K((j+1) dt) - K(j dt), with K(0) read as K(0+)
  const std::vector<double> lags = lag_table(p.k, dt, N + 1);
  std::vector<double> dk_rev(N);
  for (std::size_t j = 0; j < N; ++j) dk_rev[N - 1 - j] = lags[j + 1] - lags[j];
  std::vector<double> dg(N, 0.0);
  for (std::size_t k = 1; k < N; ++k) dg[k] = e.g_values[k] - e.g_values[k - 1];

  detail::parallel_for(c.n_paths, c.threads, [&](std::size_t path) {
    InnerNoise noise(drv, c, h);
    std::vector<double> dw(M);
    std::vector<double> incr(N);  // I_1 .. I_N
    double* out = e.values.data() + path * N;
    double* left = e.left_limits.data() + path * N;
    double x_prev = 0.0;
    for (std::size_t k = 0; k < N; ++k) {
      double x_left;
      if (k == 0) {
        x_left = e.g_values[0];
      } else {
        const double conv = simd::dot({dk_rev.data() + (N - k), k}, {incr.data(), k});
        x_left = x_prev + dg[k] + conv;
      }
      noise.fill(path, k, dw.data());
      double xi = x_left;
      for (std::size_t j = 0; j < M; ++j) {
        const double s = static_cast<double>(k * M + j) * h;
        const double bv = p.b(s, xi);
        const double sv = p.sigma(s, xi);
        xi += k0 * bv * h + k0 * sv * dw[j];
      }
      incr[k] = (xi - x_left) / k0;
      left[k] = x_left;
      out[k] = xi;
      x_prev = xi;
    }
  });
  return e;
}

PathEnsemble simulate_euler(const SveProblem& p, const SimConfig& c, const BrownianDriver& drv) {
  c.validate();
  const std::size_t N = c.N;
  const std::size_t M = c.M;
  const double dt = c.T / static_cast<double>(N);
  const double h = c.T / static_cast<double>(N * M);

  PathEnsemble e;
  e.scheme = Scheme::euler;
  e.n_paths = c.n_paths;
  e.n_steps = N;
  e.grid = make_grid(c);
  e.g_values = eval_g_grid(p.g, p.k, e.grid);
  e.values.assign(c.n_paths * N, 0.0);
  const double g0 = eval_g(p.g, p.k, p.g.singular_at_zero() ? 0.5 * dt : 0.0);

  // kw_rev[N-j] = K(j dt) for j = 1..N, the first cell read at its midpoint
  // when the kernel is singular
  std::vector<double> kw_rev(N);
  for (std::size_t j = 1; j <= N; ++j) {
    const double t = (j == 1 && !std::isfinite(p.k.meta().k0)) ? 0.5 * dt : static_cast<double>(j) * dt;
    kw_rev[N - j] = p.k(t);
  }

  detail::parallel_for(c.n_paths, c.threads, [&](std::size_t path) {
    InnerNoise noise(drv, c, h);
    std::vector<double> dw(M);
    std::vector<double> z(N);  // b dt + sigma dB at t_0 .. t_{N-1}
    double* out = e.values.data() + path * N;
    double x = g0;
    for (std::size_t k = 0; k < N; ++k) {
      noise.fill(path, k, dw.data());
      double db = 0.0;
      for (std::size_t j = 0; j < M; ++j) db += dw[j];
      const double t = static_cast<double>(k) * dt;
      z[k] = p.b(t, x) * dt + p.sigma(t, x) * db;
      const double conv = simd::dot({kw_rev.data() + (N - 1 - k), k + 1}, {z.data(), k + 1});
      x = e.g_values[k] + conv;
      out[k] = x;
    }
  });
  return e;
}

PathEnsemble simulate(const SveProblem& p, const SimConfig& c, const BrownianDriver& drv, Scheme s) {
  return s == Scheme::splitting ? simulate_splitting(p, c, drv) : simulate_euler(p, c, drv);
}

std::pair<PathEnsemble, PathEnsemble> simulate_coupled(const SveProblem& p1, const SveProblem& p2,
                                                       const SimConfig& c, const BrownianDriver& drv, Scheme s) {
  if (!same_kernel(p1.k, p2.k)) throw PreconditionError("simulate_coupled: the two problems must share the kernel");
  if (!p1.sigma.same_as(p2.sigma))
    throw PreconditionError("simulate_coupled: the two problems must share the diffusion coefficient");
  if (p1.T != p2.T) throw PreconditionError("simulate_coupled: horizons differ");
  return {simulate(p1, c, drv, s), simulate(p2, c, drv, s)};
}

}  // namespace svesim
