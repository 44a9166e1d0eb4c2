#include "svesim/model.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "svesim/errors.hpp"
#include "svesim/mittag_leffler.hpp"
#include "svesim/quadrature.hpp"

namespace svesim {

namespace {

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

double sgn(double u) { return (u > 0.0) - (u < 0.0); }

// |u|^gamma sign(u), replaced by the linear branch n^{1-gamma} u on |u| <= 1/n.
double power_branch(double u, double gamma, std::optional<std::size_t> n) {
  if (n) {
    const double nn = static_cast<double>(*n);
    if (std::abs(u) <= 1.0 / nn) return std::pow(nn, 1.0 - gamma) * u;
  }
  return sgn(u) * std::pow(std::abs(u), gamma);
}

}  // namespace

bool Coefficient::same_as(const Coefficient& other) const {
  if (fn == other.fn) return true;
  return !name.empty() && name == other.name;
}

Coefficient Coefficient::custom(CoefFn f, std::string name, double growth_C, double growth_xi) {
  if (!(growth_xi >= 0.0 && growth_xi <= 1.0)) throw ParameterError("coefficient growth exponent must lie in [0, 1]");
  Coefficient c;
  c.fn = std::make_shared<const CoefFn>(std::move(f));
  c.name = std::move(name);
  c.growth_C = growth_C;
  c.growth_xi = growth_xi;
  return c;
}

Coefficient Coefficient::linear(double b0, double beta) {
  Coefficient c = custom([b0, beta](double, double x) { return b0 + beta * x; },
                         "linear(b0=" + fmt(b0) + ", beta=" + fmt(beta) + ")", std::max(std::abs(b0), std::abs(beta)),
                         beta == 0.0 ? 0.0 : 1.0);
  c.lipschitz_const = std::abs(beta);
  c.monotone_nondecreasing_in_x = beta >= 0.0;
  return c;
}

Coefficient Coefficient::constant(double v) {
  Coefficient c = custom([v](double, double) { return v; }, "constant(" + fmt(v) + ")", std::abs(v), 0.0);
  c.lipschitz_const = 0.0;
  c.monotone_nondecreasing_in_x = true;
  return c;
}

InputCurve InputCurve::constant(double x) {
  InputCurve g;
  g.g_tilde = [x](double) { return x; };
  g.g_tilde_nondecreasing = true;
  g.name = "constant(" + fmt(x) + ")";
  return g;
}

InputCurve InputCurve::power(double x, double gamma0) {
  if (!(gamma0 > 0.0)) throw ParameterError("power curve requires gamma0 > 0");
  InputCurve g;
  g.singular = SingularPart{x, gamma0};
  g.name = "power(x=" + fmt(x) + ", gamma0=" + fmt(gamma0) + ")";
  if (gamma0 < 1.0) g.delta_growth = 1.0 - gamma0;
  return g;
}

double eval_g(const InputCurve& g, const Kernel& k, double t, std::size_t n_quad) {
  if (t < 0.0) throw DomainError("eval_g: negative time");
  double out = 0.0;
  if (g.singular) {
    const auto& s = *g.singular;
    if (t == 0.0) {
      if (s.gamma0 < 1.0) throw DomainError("eval_g: singular input curve evaluated at t = 0");
      out += s.gamma0 == 1.0 ? s.x : 0.0;
    } else {
      out += s.x * std::pow(t, s.gamma0 - 1.0) * rgamma(s.gamma0);
    }
  }
  if (g.g_tilde) out += g.g_tilde(t);
  if (g.h && t > 0.0) {
    quad::SingularOptions opt;
    opt.order = n_quad;
    opt.layers = 40;
    opt.uniform_panels = 8;
    // split at t/2 so both singular points (h at 0, K at lag 0) sit at a left end
    const double m = 0.5 * t;
    out += quad::integrate_singular([&](double s) { return k(t - s) * g.h(s); }, 0.0, m, opt);
    out += quad::integrate_singular([&](double u) { return k(u) * g.h(t - u); }, 0.0, m, opt);
  }
  return out;
}

std::vector<double> eval_g_grid(const InputCurve& g, const Kernel& k, const std::vector<double>& times,
                                std::size_t n_quad) {
  std::vector<double> out(times.size());
  for (std::size_t i = 0; i < times.size(); ++i) out[i] = eval_g(g, k, times[i], n_quad);
  return out;
}

double mollifier_norm(std::size_t n) {
  double c = 2.0;
  for (std::size_t j = 1; j <= n; ++j) c *= 2.0 * static_cast<double>(j) / (2.0 * static_cast<double>(j) + 1.0);
  return c;
}

double mollifier_density(double y, std::size_t n) {
  if (std::abs(y) >= 1.0) return 0.0;
  return std::pow(1.0 - y * y, static_cast<double>(n)) / mollifier_norm(n);
}

double mollifier_cutoff(double x, std::size_t n) {
  const double a = std::abs(x);
  const double nn = static_cast<double>(n);
  if (a <= nn) return 1.0;
  if (a >= nn + 1.0) return 0.0;
  const double s = a - nn;
  return 1.0 - s * s * s * (10.0 - 15.0 * s + 6.0 * s * s);
}

Coefficient mollify(const Coefficient& f, std::size_t n, std::size_t n_quad) {
  if (n < 1) throw ParameterError("mollify: n must be >= 1");
  if (n_quad < 2) throw ParameterError("mollify: n_quad must be >= 2");
  const auto& rule = quad::gauss_legendre(n_quad);
  const double cn = mollifier_norm(n);
  std::vector<double> ys = rule.nodes;
  std::vector<double> ws(rule.nodes.size());
  for (std::size_t i = 0; i < ws.size(); ++i)
    ws[i] = rule.weights[i] * std::pow(1.0 - ys[i] * ys[i], static_cast<double>(n)) / cn;

  auto base = f.fn;
  CoefFn fn = [base, ys, ws, n](double t, double x) {
    const double psi = mollifier_cutoff(x, n);
    if (psi == 0.0) return 0.0;
    double acc = 0.0;
    for (std::size_t i = 0; i < ys.size(); ++i) acc += ws[i] * (*base)(t, x - ys[i]);
    return psi * acc;
  };
  Coefficient out = Coefficient::custom(std::move(fn), "mollify(" + f.name + ", n=" + std::to_string(n) + ")",
                                        f.growth_C * std::pow(2.0, f.growth_xi), f.growth_xi);
  out.monotone_nondecreasing_in_x = std::nullopt;
  ProbeOptions po;
  po.x_range = static_cast<double>(n) + 1.5;
  po.probes = 4000;
  out.lipschitz_const = probe_lipschitz(out, po);
  return out;
}

CirCoefficients cir_coefficients(double lam, double theta, double sigma0, double gamma1, double gamma2,
                                 std::optional<std::size_t> n) {
  if (!(lam > 0.0 && theta > 0.0 && sigma0 > 0.0)) throw ParameterError("cir: lam, theta, sigma0 must be positive");
  if (!(gamma1 > 0.0 && gamma1 <= 1.0 && gamma2 > 0.0 && gamma2 <= 1.0))
    throw ParameterError("cir: gamma1, gamma2 must lie in (0, 1]");
  if (n && *n < 1) throw ParameterError("cir: n must be >= 1");

  const std::string suffix = n ? ", n=" + std::to_string(*n) + ")" : ")";
  Coefficient b = Coefficient::custom(
      [=](double, double x) { return lam * power_branch(theta - x, gamma1, n); },
      "cir_drift(lam=" + fmt(lam) + ", theta=" + fmt(theta) + ", gamma1=" + fmt(gamma1) + suffix,
      lam * std::pow(std::max(1.0, theta), gamma1), gamma1);
  b.monotone_nondecreasing_in_x = false;
  Coefficient s = Coefficient::custom(
      [=](double, double x) { return sigma0 * std::abs(power_branch(x, gamma2, n)); },
      "cir_diffusion(sigma0=" + fmt(sigma0) + ", gamma2=" + fmt(gamma2) + suffix, sigma0, gamma2);
  if (n) {
    b.lipschitz_const = lam * std::pow(static_cast<double>(*n), 1.0 - gamma1);
    s.lipschitz_const = sigma0 * std::pow(static_cast<double>(*n), 1.0 - gamma2);
  } else {
    if (gamma1 == 1.0) b.lipschitz_const = lam;
    if (gamma2 == 1.0) s.lipschitz_const = sigma0;
  }
  return {std::move(b), std::move(s)};
}

double probe_lipschitz(const Coefficient& f, const ProbeOptions& opt) {
  std::mt19937_64 rng(opt.seed);
  std::uniform_real_distribution<double> ux(-opt.x_range, opt.x_range);
  std::uniform_real_distribution<double> ut(0.0, opt.t_max);
  std::uniform_real_distribution<double> ulog(-4.0, 0.0);
  double worst = 0.0;
  for (std::size_t i = 0; i < opt.probes; ++i) {
    const double t = ut(rng);
    const double x = ux(rng);
    const double d = std::pow(10.0, ulog(rng)) * (i % 2 == 0 ? 1.0 : -1.0);
    const double y = x + d;
    worst = std::max(worst, std::abs(f(t, x) - f(t, y)) / std::abs(x - y));
  }
  return worst;
}

double probe_growth_ratio(const Coefficient& f, double C, double xi, const ProbeOptions& opt) {
  std::mt19937_64 rng(opt.seed);
  std::uniform_real_distribution<double> ux(-opt.x_range, opt.x_range);
  std::uniform_real_distribution<double> ut(0.0, opt.t_max);
  double worst = 0.0;
  for (std::size_t i = 0; i < opt.probes; ++i) {
    const double t = ut(rng);
    const double x = ux(rng);
    worst = std::max(worst, std::abs(f(t, x)) / (C * std::pow(1.0 + std::abs(x), xi)));
  }
  return worst;
}

bool AssumptionReport::all_passed() const {
  return std::all_of(clauses.begin(), clauses.end(), [](const Clause& c) { return !c.applicable || c.passed; });
}

AssumptionReport check_assumption(const SveProblem& p, double q, double eta) {
  if (!(q > 2.0)) throw ParameterError("check_assumption: q must exceed 2");
  if (!(eta > 0.0)) throw ParameterError("check_assumption: eta must be positive");
  AssumptionReport rep;
  const double C = p.b.growth_C + p.sigma.growth_C;
  const double xi = std::max(p.b.growth_xi, p.sigma.growth_xi);
  rep.xi = xi;

  {
    Clause c;
    c.name = "growth";
    ProbeOptions po;
    po.t_max = p.T;
    po.x_range = 100.0;
    double worst = 0.0;
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> ux(-po.x_range, po.x_range);
    std::uniform_real_distribution<double> ut(0.0, p.T);
    for (std::size_t i = 0; i < po.probes; ++i) {
      const double t = ut(rng);
      const double x = ux(rng);
      const double lhs = std::abs(p.b(t, x)) + std::abs(p.sigma(t, x));
      worst = std::max(worst, lhs / (C * std::pow(1.0 + std::abs(x), xi)));
    }
    c.passed = worst <= 1.0 + 1e-12;
    c.margin = 1.0 - worst;
    c.detail = "max (|b|+|sigma|)/(C(1+|x|)^xi) = " + fmt(worst) + " with C = " + fmt(C) + ", xi = " + fmt(xi);
    rep.clauses.push_back(c);
  }

  {
    Clause c;
    c.name = "g_in_Lq";
    const quad::Integrand f = [&](double t) { return std::pow(std::abs(eval_g(p.g, p.k, t)), q); };
    quad::SingularOptions coarse;
    coarse.layers = 20;
    quad::SingularOptions fine;
    fine.layers = 40;
    // a power singularity t^{gamma0-1} is decided by its exponent; refinement alone
    // cannot tell a slowly convergent integral from a divergent one
    double lead = 1.0;
    double a0 = 0.0;
    if (p.g.singular_at_zero()) {
      lead = 1.0 - (1.0 - p.g.singular->gamma0) * q;
      a0 = 1e-6 * p.T;
    }
    const double a = quad::integrate_singular(f, a0, p.T, coarse);
    const double b = quad::integrate_singular(f, a0, p.T, fine);
    const double rel = std::abs(b - a) / std::max(std::abs(b), 1e-300);
    c.passed = lead > 0.0 && std::isfinite(b) && rel < 1e-6;
    c.margin = std::min(lead, 1e-6 - rel);
    c.detail = "int_" + fmt(a0) + "^T |g|^q = " + fmt(b) + " (relative change under refinement " + fmt(rel) + ")";
    if (p.g.singular_at_zero()) c.detail += ", 1 - (1 - gamma0) q = " + fmt(lead);
    rep.clauses.push_back(c);
  }

  double gamma = 0.0;
  {
    Clause c;
    c.name = "kernel_modulus";
    try {
      gamma = holder_params(p.k, eta).gamma;
      const double hs[] = {0.2, 0.1, 0.05, 0.025};
      double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
      for (double h : hs) {
        const LpModulus m = modulus_l2(p.k, p.T, h, 2.0 + eta, 400);
        const double lx = std::log(h);
        const double ly = std::log(m.norm_head + m.norm_shift);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
      }
      const double slope = (4.0 * sxy - sx * sy) / (4.0 * sxx - sx * sx);
      c.passed = slope >= gamma - 0.05;
      c.margin = slope - (gamma - 0.05);
      c.detail = "log-log slope " + fmt(slope) + " against gamma = " + fmt(gamma);
    } catch (const ParameterError& e) {
      c.passed = false;
      c.margin = -1.0;
      c.detail = e.what();
    }
    rep.clauses.push_back(c);
  }
  rep.gamma = gamma;

  {
    Clause c;
    c.name = "q_condition";
    const double rhs = gamma > 0.0 ? 2.0 * xi * (1.0 + 1.0 / eta) / (gamma + 0.5 * eta / (2.0 + eta)) : 0.0;
    c.passed = gamma > 0.0 && q > rhs;
    c.margin = q - rhs;
    c.detail = "q = " + fmt(q) + " against bound " + fmt(rhs);
    rep.clauses.push_back(c);
  }

  {
    Clause c;
    c.name = "q_condition_fractional";
    const auto* f = std::get_if<Kernel::Fractional>(&p.k.variant());
    c.applicable = f && f->alpha < 1.0 && xi > 0.0;
    if (c.applicable) {
      const double bound = xi * f->alpha / std::pow(f->alpha - 0.5, 2);
      c.passed = q > bound;
      c.margin = q - bound;
      c.detail = "q = " + fmt(q) + " against xi alpha/(alpha-1/2)^2 = " + fmt(bound);
    } else {
      c.detail = "kernel is not fractional with alpha < 1, or xi = 0";
    }
    rep.clauses.push_back(c);
  }
  return rep;
}

ComparabilityReport comparable_check(const ComparableData& d1, const ComparableData& d2, const Kernel& k,
                                     std::size_t probes, std::uint64_t seed, double t_max, double x_range,
                                     double tol) {
  (void)k;
  if (d1.g.singular || d2.g.singular)
    throw PreconditionError("comparable_check: input curve has a singular part without a (g_tilde, h) "
                            "decomposition; rewrite it with singular_as_convolution");
  if (probes < 2) throw ParameterError("comparable_check: need at least 2 probes");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> ut(0.0, t_max);
  std::uniform_real_distribution<double> ux(-x_range, x_range);
  const auto gt = [](const InputCurve& g, double t) { return g.g_tilde ? g.g_tilde(t) : 0.0; };
  const auto hv = [](const InputCurve& g, double t) { return g.h ? g.h(t) : 0.0; };

  ComparabilityReport rep;
  std::vector<double> ts(probes);
  for (auto& t : ts) t = t_max - ut(rng);  // (0, t_max]
  std::sort(ts.begin(), ts.end());
  rep.worst_g_tilde_gap = std::numeric_limits<double>::infinity();
  rep.worst_monotone_drop = std::numeric_limits<double>::infinity();
  double prev = 0.0;
  for (std::size_t i = 0; i < ts.size(); ++i) {
    const double d = gt(d2.g, ts[i]) - gt(d1.g, ts[i]);
    rep.worst_g_tilde_gap = std::min(rep.worst_g_tilde_gap, d);
    bool bad = d < -tol * std::max(1.0, std::abs(d));
    if (i > 0) {
      rep.worst_monotone_drop = std::min(rep.worst_monotone_drop, d - prev);
      bad = bad || d - prev < -tol * std::max(1.0, std::abs(d));
    }
    if (bad && rep.g_tilde_ok) {
      rep.g_tilde_ok = false;
      rep.witness_t = ts[i];
    }
    prev = d;
  }

  rep.worst_drift_gap = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < probes; ++i) {
    const double t = t_max - ut(rng);
    const double x = ux(rng);
    const double lhs = d1.b(t, x) + hv(d1.g, t);
    const double rhs = d2.b(t, x) + hv(d2.g, t);
    const double gap = rhs - lhs;
    if (gap < rep.worst_drift_gap) rep.worst_drift_gap = gap;
    if (gap < -tol * std::max({1.0, std::abs(lhs), std::abs(rhs)}) && rep.drift_ok) {
      rep.drift_ok = false;
      rep.witness_t = t;
      rep.witness_x = x;
    }
  }
  rep.comparable = rep.g_tilde_ok && rep.drift_ok;
  return rep;
}

InputCurve singular_as_convolution(const InputCurve& g, const Kernel& k) {
  if (!g.singular) return g;
  const auto* f = std::get_if<Kernel::Fractional>(&k.variant());
  if (!f) throw PreconditionError("singular_as_convolution: requires a fractional kernel");
  const double x = g.singular->x;
  const double e = g.singular->gamma0 - f->alpha;
  if (e == 0.0) throw ParameterError("singular_as_convolution: gamma0 = alpha has no function h");
  const double c = x * rgamma(e);
  InputCurve out = g;
  out.singular.reset();
  CurveFn old_h = g.h;
  out.h = [old_h, c, e](double t) { return c * std::pow(t, e - 1.0) + (old_h ? old_h(t) : 0.0); };
  if (!out.g_tilde) out.g_tilde = [](double) { return 0.0; };
  out.name = g.name + " as K*h";
  return out;
}

}  // namespace svesim
