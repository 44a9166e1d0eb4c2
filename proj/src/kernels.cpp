#include "svesim/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <sstream>

#include "svesim/errors.hpp"
#include "svesim/quadrature.hpp"

namespace svesim {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double default_eta(double alpha) {
  if (alpha < 1.0) return 0.5 * (2.0 * alpha - 1.0) / (1.0 - alpha);
  return 1.0;
}

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

}  // namespace

Kernel Kernel::fractional(double alpha) {
  if (!(alpha > 0.5 && alpha < 2.0))
    throw ParameterError("fractional kernel requires alpha in (1/2, 2), got " + std::to_string(alpha));
  KernelMeta m;
  m.eta = default_eta(alpha);
  if (alpha < 1.0) {
    m.k0 = kInf;
    m.gamma = alpha - 1.0 + 1.0 / (2.0 + m.eta);
    m.nonincreasing = true;
    m.completely_monotone = true;
  } else if (alpha == 1.0) {
    m.k0 = 1.0;
    m.gamma = 1.0 / (2.0 + m.eta);
    m.nonincreasing = true;
    m.completely_monotone = true;
  } else {
    m.k0 = 0.0;
    m.gamma = 1.0 / (2.0 + m.eta);
    m.nonincreasing = false;
    m.completely_monotone = false;
  }
  return Kernel(Fractional{alpha}, m);
}

Kernel Kernel::exp_sum(std::vector<double> weights, std::vector<double> rates) {
  if (weights.size() != rates.size()) throw ParameterError("exp_sum: weights and rates differ in length");
  for (std::size_t i = 0; i < weights.size(); ++i) {
    if (!(weights[i] >= 0.0) || !(rates[i] >= 0.0) || !std::isfinite(weights[i]) || !std::isfinite(rates[i]))
      throw ParameterError("exp_sum: weights and rates must be finite and >= 0");
  }
  KernelMeta m;
  m.k0 = std::accumulate(weights.begin(), weights.end(), 0.0);
  m.eta = 1.0;
  m.gamma = 1.0 / (2.0 + m.eta);
  m.nonincreasing = true;
  m.completely_monotone = true;
  return Kernel(ExpSum{std::move(weights), std::move(rates)}, m);
}

Kernel Kernel::tabulated(std::vector<double> grid, std::vector<double> values) {
  if (grid.size() != values.size() || grid.size() < 2)
    throw ParameterError("tabulated: need at least two (t, value) samples of equal count");
  if (grid.front() != 0.0) throw ParameterError("tabulated: grid must start at t = 0");
  for (std::size_t i = 1; i < grid.size(); ++i)
    if (!(grid[i] > grid[i - 1])) throw ParameterError("tabulated: grid must be strictly increasing");
  KernelMeta m;
  m.k0 = values.front();
  m.eta = 1.0;
  m.gamma = 1.0 / (2.0 + m.eta);
  m.nonincreasing = std::is_sorted(values.rbegin(), values.rend());
  m.completely_monotone = false;
  return Kernel(Tabulated{std::move(grid), std::move(values)}, m);
}

double Kernel::operator()(double t) const {
  return std::visit(
      overloaded{
          [t](const Fractional& f) {
            if (t < 0.0 || (t == 0.0 && f.alpha < 1.0))
              throw DomainError("fractional kernel evaluated at t = " + std::to_string(t));
            if (t == 0.0) return f.alpha == 1.0 ? 1.0 : 0.0;
            if (f.alpha == 1.0) return 1.0;
            return std::exp((f.alpha - 1.0) * std::log(t) - std::lgamma(f.alpha));
          },
          [t](const ExpSum& e) {
            if (t < 0.0) throw DomainError("kernel evaluated at negative time");
            double s = 0.0;
            for (std::size_t i = 0; i < e.weights.size(); ++i) s += e.weights[i] * std::exp(-e.rates[i] * t);
            return s;
          },
          [t](const Shifted& s) {
            if (t < 0.0) throw DomainError("kernel evaluated at negative time");
            return (*s.base)(t + s.eps);
          },
          [t](const Tabulated& tab) {
            if (t < 0.0 || t > tab.grid.back())
              throw RangeError("tabulated kernel evaluated outside [0, " + std::to_string(tab.grid.back()) + "]");
            const auto it = std::upper_bound(tab.grid.begin(), tab.grid.end(), t);
            if (it == tab.grid.end()) return tab.values.back();
            const std::size_t i = static_cast<std::size_t>(it - tab.grid.begin());
            const double w = (t - tab.grid[i - 1]) / (tab.grid[i] - tab.grid[i - 1]);
            return (1.0 - w) * tab.values[i - 1] + w * tab.values[i];
          },
      },
      variant_);
}

std::string Kernel::describe() const {
  std::ostringstream os;
  os.precision(17);
  std::visit(overloaded{
                 [&](const Fractional& f) { os << "fractional(alpha=" << f.alpha << ")"; },
                 [&](const ExpSum& e) { os << "expsum(n=" << e.weights.size() << ", k0=" << meta_.k0 << ")"; },
                 [&](const Shifted& s) { os << "shifted(" << s.base->describe() << ", eps=" << s.eps << ")"; },
                 [&](const Tabulated& t) { os << "tabulated(n=" << t.grid.size() << ")"; },
             },
             variant_);
  return os.str();
}

HolderParams holder_params(const Kernel& k, double eta_choice) {
  if (!(eta_choice > 0.0)) throw ParameterError("holder_params: eta must be positive");
  if (const auto* f = std::get_if<Kernel::Fractional>(&k.variant()); f && f->alpha < 1.0) {
    const double eta_max = (2.0 * f->alpha - 1.0) / (1.0 - f->alpha);
    if (!(eta_choice < eta_max))
      throw ParameterError("holder_params: eta must lie in (0, " + std::to_string(eta_max) + ") for alpha = " +
                           std::to_string(f->alpha));
    return {f->alpha - 1.0 + 1.0 / (2.0 + eta_choice), eta_choice};
  }
  return {1.0 / (2.0 + eta_choice), eta_choice};
}

LpModulus modulus_l2(const Kernel& k, double T, double h, double p, std::size_t n_grid) {
  if (!(h > 0.0 && h <= 1.0)) throw ParameterError("modulus_l2: h must lie in (0, 1]");
  if (!(T > 0.0)) throw ParameterError("modulus_l2: T must be positive");
  if (!(p >= 2.0)) throw ParameterError("modulus_l2: p must be >= 2");
  if (n_grid < 100) throw ParameterError("modulus_l2: n_grid must be >= 100");

  const bool singular = !std::isfinite(k.meta().k0);
  double grading = 1.0;
  if (const auto* f = std::get_if<Kernel::Fractional>(&k.variant()); f && f->alpha < 1.0)
    grading = 2.0 / (2.0 * f->alpha - 1.0);
  else if (singular)
    grading = 4.0;
  const auto& rule = quad::gauss_legendre(10);

  const quad::Integrand head = [&](double t) { return std::pow(std::abs(k(t)), p); };
  const quad::Integrand diff = [&](double t) { return std::pow(std::abs(k(t + h) - k(t)), p); };
  const auto mesh_head = quad::power_graded_mesh(0.0, h, n_grid, grading);
  const auto mesh_shift = quad::power_graded_mesh(0.0, T, n_grid, grading);
  if (singular) {
    // graded cells still leave the endpoint singularity inside the first Gauss cell
    return {std::pow(quad::integrate_singular(head, 0.0, h), 1.0 / p),
            std::pow(quad::integrate_singular(diff, 0.0, T), 1.0 / p)};
  }
  return {std::pow(quad::integrate_mesh(head, mesh_head, rule), 1.0 / p),
          std::pow(quad::integrate_mesh(diff, mesh_shift, rule), 1.0 / p)};
}

Kernel soe_from_fractional(double alpha, std::size_t n_nodes, double rho_min, double rho_max) {
  if (!(alpha > 0.5 && alpha < 1.0)) throw ParameterError("soe_from_fractional: alpha must lie in (1/2, 1)");
  if (n_nodes < 2) throw ParameterError("soe_from_fractional: need at least 2 nodes");
  if (!(rho_min > 0.0 && rho_max > rho_min)) throw ParameterError("soe_from_fractional: need 0 < rho_min < rho_max");

  const double norm = 1.0 / (std::tgamma(alpha) * std::tgamma(1.0 - alpha));
  // antiderivatives of rho^{-alpha} and rho^{1-alpha}
  const auto mass = [&](double a, double b) { return (std::pow(b, 1.0 - alpha) - std::pow(a, 1.0 - alpha)) / (1.0 - alpha); };
  const auto moment = [&](double a, double b) { return (std::pow(b, 2.0 - alpha) - std::pow(a, 2.0 - alpha)) / (2.0 - alpha); };

  const double log_ratio = std::log(rho_max / rho_min) / static_cast<double>(n_nodes);
  std::vector<double> edges(n_nodes + 1);
  for (std::size_t j = 0; j <= n_nodes; ++j) edges[j] = rho_min * std::exp(log_ratio * static_cast<double>(j));
  edges.back() = rho_max;

  std::vector<double> weights(n_nodes);
  std::vector<double> rates(n_nodes);
  // The lowest cell also carries the density's mass on [0, rho_min]; its node
  // sits at the density-weighted mean rate of [0, edges[1]].
  weights[0] = norm * mass(0.0, edges[1]);
  rates[0] = moment(0.0, edges[1]) / mass(0.0, edges[1]);
  for (std::size_t j = 1; j < n_nodes; ++j) {
    weights[j] = norm * mass(edges[j], edges[j + 1]);
    rates[j] = std::sqrt(edges[j] * edges[j + 1]);
  }
  return Kernel::exp_sum(std::move(weights), std::move(rates));
}

bool same_kernel(const Kernel& a, const Kernel& b) {
  if (a.variant().index() != b.variant().index()) return false;
  return std::visit(
      overloaded{
          [&](const Kernel::Fractional& f) { return f.alpha == std::get<Kernel::Fractional>(b.variant()).alpha; },
          [&](const Kernel::ExpSum& e) {
            const auto& o = std::get<Kernel::ExpSum>(b.variant());
            return e.weights == o.weights && e.rates == o.rates;
          },
          [&](const Kernel::Shifted& s) {
            const auto& o = std::get<Kernel::Shifted>(b.variant());
            return s.eps == o.eps && same_kernel(*s.base, *o.base);
          },
          [&](const Kernel::Tabulated& t) {
            const auto& o = std::get<Kernel::Tabulated>(b.variant());
            return t.grid == o.grid && t.values == o.values;
          },
      },
      a.variant());
}

Kernel bernstein_truncate(const Kernel& k, double H) {
  const auto* e = std::get_if<Kernel::ExpSum>(&k.variant());
  if (!e) throw PreconditionError("bernstein_truncate: kernel must be an exponential sum");
  if (!(H > 0.0)) throw ParameterError("bernstein_truncate: H must be positive");
  std::vector<double> w;
  std::vector<double> r;
  for (std::size_t i = 0; i < e->rates.size(); ++i) {
    if (e->rates[i] <= H) {
      w.push_back(e->weights[i]);
      r.push_back(e->rates[i]);
    }
  }
  return Kernel::exp_sum(std::move(w), std::move(r));
}

Kernel shift(const Kernel& k, double eps) {
  if (!(eps > 0.0)) throw ParameterError("shift: eps must be positive");
  // collapse nested shifts so shift(shift(k, a), b) == shift(k, a + b)
  if (const auto* s = std::get_if<Kernel::Shifted>(&k.variant())) return shift(*s->base, s->eps + eps);
  KernelMeta m = k.meta();
  m.k0 = k(eps);
  m.eta = 1.0;
  m.gamma = 1.0 / (2.0 + m.eta);
  return Kernel(Kernel::Shifted{std::make_shared<const Kernel>(k), eps}, m);
}

std::vector<double> lag_table(const Kernel& k, double dt, std::size_t n) {
  std::vector<double> out(n);
  if (n == 0) return out;
  out[0] = k.meta().k0;
  for (std::size_t j = 1; j < n; ++j) out[j] = k(dt * static_cast<double>(j));
  return out;
}

namespace {

// Partial sum f(t) + sum_{t_l <= t} x_l K(t - t_l) together with its absolute
// counterpart (used to normalise the tolerance).
struct ProbeValue {
  double value;
  double scale;
};

ProbeValue probe(const Kernel& k, std::span<const double> times, std::span<const double> x, double t, double f_t) {
  double v = f_t;
  double s = std::abs(f_t);
  for (std::size_t l = 0; l < times.size() && times[l] <= t; ++l) {
    const double kv = (t == times[l]) ? k.meta().k0 : k(t - times[l]);
    v += x[l] * kv;
    s += std::abs(x[l] * kv);
  }
  return {v, s};
}

struct StepForcing {
  std::vector<double> jump_times;
  std::vector<double> levels;  // level after each jump; f = base before the first
  double base = 0.0;

  double operator()(double t) const {
    double f = base;
    for (std::size_t i = 0; i < jump_times.size() && jump_times[i] <= t; ++i) f = levels[i];
    return f;
  }
};

}  // namespace

PropertyReport check_nonneg_preserving(const Kernel& k, const NonnegCheckOptions& opt) {
  const double k0 = k.meta().k0;
  if (!std::isfinite(k0))
    throw PreconditionError("check_nonneg_preserving: K(0+) = +inf; truncate the kernel first (soe_from_fractional / "
                            "bernstein_truncate)");
  if (!(k0 > 0.0)) throw PreconditionError("check_nonneg_preserving: requires K(0+) > 0");
  if (opt.n_points == 0 || opt.n_trials == 0) throw ParameterError("check_nonneg_preserving: empty test plan");

  double horizon = opt.horizon;
  if (horizon <= 0.0) {
    horizon = 5.0;
    if (const auto* tab = std::get_if<Kernel::Tabulated>(&k.variant())) horizon = 0.5 * tab->grid.back();
  }

  std::mt19937_64 rng(opt.seed);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  std::exponential_distribution<double> expo(1.0);

  PropertyReport rep;
  std::vector<double> times;
  std::vector<double> x;
  for (std::size_t trial = 0; trial < opt.n_trials; ++trial) {
    const std::size_t n = 1 + static_cast<std::size_t>(unif(rng) * static_cast<double>(opt.n_points)) % opt.n_points;
    times.resize(n);
    for (auto& t : times) t = horizon * (1.0 - unif(rng));  // (0, horizon]
    std::sort(times.begin(), times.end());
    times.erase(std::unique(times.begin(), times.end()), times.end());

    const bool with_forcing = (trial % 2) == 1;
    StepForcing f;
    if (with_forcing) {
      f.base = expo(rng) * (unif(rng) < 0.3 ? 0.0 : 1.0);
      const std::size_t jumps = static_cast<std::size_t>(unif(rng) * 4.0);
      double level = f.base;
      for (std::size_t j = 0; j < jumps; ++j) {
        f.jump_times.push_back(2.0 * horizon * unif(rng));
        level += expo(rng);
        f.levels.push_back(level);
      }
      std::sort(f.jump_times.begin(), f.jump_times.end());
    }

    x.assign(times.size(), 0.0);
    for (std::size_t kk = 0; kk < times.size(); ++kk) {
      const double target = (unif(rng) < 0.5) ? 0.0 : expo(rng);
      double acc = with_forcing ? f(times[kk]) : 0.0;
      for (std::size_t l = 0; l < kk; ++l) acc += x[l] * k(times[kk] - times[l]);
      x[kk] = (target - acc) / k0;
    }

    bool violated = false;
    auto check_at = [&](double t) {
      const double ft = with_forcing ? f(t) : 0.0;
      const ProbeValue pv = probe(k, times, x, t, ft);
      ++rep.probes;
      const double normalised = pv.value / std::max(1.0, pv.scale);
      if (normalised < rep.worst_value) rep.worst_value = normalised;
      if (pv.value < -opt.tol * std::max(1.0, pv.scale)) {
        if (!violated && !rep.witness) rep.witness = NonnegWitness{times, x, with_forcing, t, pv.value};
        violated = true;
      }
    };
    for (std::size_t i = 0; i < opt.t_probes; ++i) check_at(2.0 * horizon * (1.0 - unif(rng)));
    for (std::size_t l = 0; l < times.size(); ++l) {
      const double next = (l + 1 < times.size()) ? times[l + 1] : 2.0 * horizon;
      check_at(times[l]);
      check_at(0.5 * (times[l] + next));
      check_at(std::nextafter(next, 0.0));
    }
    ++rep.trials;
    if (violated) ++rep.violations;
  }
  rep.verdict = rep.violations > 0 ? PropertyVerdict::violation_found : PropertyVerdict::no_violation_found;
  return rep;
}

}  // namespace svesim
