#include "svesim/mittag_leffler.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <vector>

#include "svesim/errors.hpp"
#include "svesim/quadrature.hpp"

namespace svesim {

namespace {

using cplx = std::complex<double>;
constexpr double kPi = std::numbers::pi;
constexpr double kInf = std::numeric_limits<double>::infinity();
const double kLogEps = std::log(std::numeric_limits<double>::epsilon());

void check_params(double alpha, double beta, double z) {
  if (!(alpha > 0.0 && alpha <= 2.0)) throw ParameterError("Mittag-Leffler: alpha must lie in (0, 2]");
  if (!(beta > 0.0)) throw ParameterError("Mittag-Leffler: beta must be positive");
  if (std::isnan(z)) throw ParameterError("Mittag-Leffler: z is NaN");
}

// Neumaier compensated accumulator.
struct CompSum {
  double s = 0.0;
  double c = 0.0;
  void add(double x) {
    const double t = s + x;
    if (std::abs(s) >= std::abs(x))
      c += (s - t) + x;
    else
      c += (x - t) + s;
    s = t;
  }
  double value() const { return s + c; }
};

struct ContourParams {
  double mu = 0.0;
  double h = 0.0;
  double n = kInf;
};

// Optimal parameters for a parabolic contour confined to a bounded strip
// between two consecutive singularities.
ContourParams optimal_bounded(double t, double phi_j, double phi_j1, double pj, double qj, double log_epsilon) {
  constexpr double fac = 1.01;
  const double f_max = std::exp(log_epsilon - kLogEps);
  const double sq_phi_j = std::sqrt(phi_j);
  const double threshold = 2.0 * std::sqrt((log_epsilon - kLogEps) / t);
  const double sq_phi_j1 = std::min(std::sqrt(phi_j1), threshold - sq_phi_j);

  double sqb_j = 0.0;
  double sqb_j1 = 0.0;
  double f_bar = 1.0;
  bool adm = false;
  if (pj < 1e-14 && qj < 1e-14) {
    sqb_j = sq_phi_j;
    sqb_j1 = sq_phi_j1;
    adm = true;
  } else if (pj < 1e-14) {
    sqb_j = sq_phi_j;
    const double f_min = sq_phi_j > 0.0 ? fac * std::pow(sq_phi_j / (sq_phi_j1 - sq_phi_j), qj) : fac;
    if (f_min < f_max) {
      f_bar = f_min + f_min / f_max * (f_max - f_min);
      const double fq = std::pow(f_bar, -1.0 / qj);
      sqb_j1 = (2.0 * sq_phi_j1 - fq * sq_phi_j) / (2.0 + fq);
      adm = true;
    }
  } else if (qj < 1e-14) {
    sqb_j1 = sq_phi_j1;
    const double f_min = fac * std::pow(sq_phi_j1 / (sq_phi_j1 - sq_phi_j), pj);
    if (f_min < f_max) {
      f_bar = f_min + f_min / f_max * (f_max - f_min);
      const double fp = std::pow(f_bar, -1.0 / pj);
      sqb_j = (2.0 * sq_phi_j + fp * sq_phi_j1) / (2.0 - fp);
      adm = true;
    }
  } else {
    double f_min = fac * (sq_phi_j + sq_phi_j1) / std::pow(sq_phi_j1 - sq_phi_j, std::max(pj, qj));
    if (f_min < f_max) {
      f_min = std::max(f_min, 1.5);
      f_bar = f_min + f_min / f_max * (f_max - f_min);
      const double fp = std::pow(f_bar, -1.0 / pj);
      const double fq = std::pow(f_bar, -1.0 / qj);
      const double w = -phi_j1 * t / log_epsilon;
      const double den = 2.0 + w - (1.0 + w) * fp + fq;
      sqb_j = ((2.0 + w + fq) * sq_phi_j + fp * sq_phi_j1) / den;
      sqb_j1 = (-(1.0 + w) * fq * sq_phi_j + (2.0 + w - (1.0 + w) * fp) * sq_phi_j1) / den;
      adm = true;
    }
  }
  if (!adm) return {};
  const double le = log_epsilon - std::log(f_bar);
  const double w = -sqb_j1 * sqb_j1 * t / le;
  ContourParams cp;
  cp.mu = std::pow(((1.0 + w) * sqb_j + sqb_j1) / (2.0 + w), 2);
  cp.h = -2.0 * kPi / le * (sqb_j1 - sqb_j) / ((1.0 + w) * sqb_j + sqb_j1);
  cp.n = std::ceil(std::sqrt(1.0 - le / t / cp.mu) / cp.h);
  return cp;
}

// Optimal parameters for a contour to the right of the last singularity.
ContourParams optimal_unbounded(double t, double phi_j, double pj, double log_epsilon) {
  const double sq_phi_j = std::sqrt(phi_j);
  double phib = phi_j > 0.0 ? phi_j * 1.01 : 0.01;
  double sqb = std::sqrt(phib);
  constexpr double f_min = 1.0;
  constexpr double f_max = 10.0;
  constexpr double f_tar = 5.0;
  double n = 0.0;
  double a = 0.0;
  double sq_mu = 0.0;
  for (int iter = 0; iter < 200; ++iter) {
    const double phi_t = phib * t;
    const double lep = log_epsilon / phi_t;
    n = std::ceil(phi_t / kPi * (1.0 - 1.5 * lep + std::sqrt(1.0 - 2.0 * lep)));
    a = kPi * n / phi_t;
    sq_mu = sqb * std::abs(4.0 - a) / std::abs(7.0 - std::sqrt(1.0 + 12.0 * a));
    const double fbar = std::pow((sqb - sq_phi_j) / sq_mu, -pj);
    if (pj < 1e-14 || (f_min < fbar && fbar < f_max)) break;
    sq_mu = std::pow(f_tar, -1.0 / pj) * sq_mu + sq_phi_j;
    phib = sq_mu * sq_mu;
    sqb = sq_mu;
  }
  ContourParams cp;
  cp.mu = sq_mu * sq_mu;
  cp.h = (-3.0 * a - 2.0 + 2.0 * std::sqrt(1.0 + 12.0 * a)) / (4.0 - a) / n;
  cp.n = n;
  // keep round-off under control
  const double threshold = (log_epsilon - kLogEps) / t;
  if (cp.mu > threshold) {
    const double q = std::abs(pj) < 1e-14 ? 0.0 : std::pow(f_tar, -1.0 / pj) * std::sqrt(cp.mu);
    phib = std::pow(q + sq_phi_j, 2);
    if (phib < threshold) {
      const double w = std::sqrt(kLogEps / (kLogEps - log_epsilon));
      const double u = std::sqrt(-phib * t / kLogEps);
      cp.mu = threshold;
      cp.n = std::ceil(w * log_epsilon / 2.0 / kPi / (u * w - 1.0));
      cp.h = std::sqrt(kLogEps / (kLogEps - log_epsilon)) / cp.n;
    } else {
      cp.n = kInf;
      cp.h = 0.0;
    }
  }
  return cp;
}

struct Singularity {
  cplx s;
  double phi;
};

}  // namespace

double rgamma(double x) {
  if (x > 0.0) {
    if (x < 170.0) return 1.0 / std::tgamma(x);
    return std::exp(-std::lgamma(x));
  }
  const double r = std::round(x);
  if (x == r) return 0.0;
  // reflection: 1/Gamma(x) = Gamma(1-x) sin(pi x) / pi
  const double frac = x - r;
  const double sinpi = ((static_cast<long long>(r) % 2 == 0) ? 1.0 : -1.0) * std::sin(kPi * frac);
  return sinpi / kPi * std::exp(std::lgamma(1.0 - x));
}

const char* ml_method_name(MlMethod m) {
  switch (m) {
    case MlMethod::series: return "series";
    case MlMethod::contour: return "contour";
    case MlMethod::asymptotic: return "asymptotic";
  }
  return "?";
}

MlResult ml_series(double alpha, double beta, double z) {
  check_params(alpha, beta, z);
  MlResult r;
  r.method = MlMethod::series;
  if (z == 0.0) {
    r.value = rgamma(beta);
    r.error_estimate = std::numeric_limits<double>::epsilon() * std::abs(r.value);
    return r;
  }
  const double lz = std::log(std::abs(z));
  const bool alternating = z < 0.0;
  CompSum sum;
  double max_term = 0.0;
  double prev_lt = kInf;
  constexpr int kMaxTerms = 200000;
  int n = 0;
  for (; n < kMaxTerms; ++n) {
    const double lt = n * lz - std::lgamma(alpha * n + beta);
    const double mag = std::exp(lt);
    sum.add((alternating && (n % 2 == 1)) ? -mag : mag);
    max_term = std::max(max_term, mag);
    if (!std::isfinite(sum.value())) break;
    if (lt < prev_lt && mag <= 1e-17 * std::max(std::abs(sum.value()), 1e-300)) break;
    prev_lt = lt;
  }
  r.value = sum.value();
  r.error_estimate = 8.0 * std::numeric_limits<double>::epsilon() * max_term +
                     std::numeric_limits<double>::epsilon() * std::abs(r.value);
  r.accuracy_warning = n >= kMaxTerms || r.error_estimate > 1e-10 * std::max(1.0, std::abs(r.value));
  return r;
}

MlResult ml_contour(double alpha, double beta, double z) {
  check_params(alpha, beta, z);
  MlResult r;
  r.method = MlMethod::contour;
  if (std::abs(z) < 1e-15) {
    r.value = rgamma(beta);
    return r;
  }
  constexpr double t = 1.0;
  double log_epsilon = std::log(1e-15);

  // poles of s^{alpha-beta} / (s^alpha - z) on the principal sheet
  const double theta = z < 0.0 ? kPi : 0.0;
  const int kmin = static_cast<int>(std::ceil(-alpha / 2.0 - theta / 2.0 / kPi));
  const int kmax = static_cast<int>(std::floor(alpha / 2.0 - theta / 2.0 / kPi));
  std::vector<Singularity> sing;
  const double rad = std::pow(std::abs(z), 1.0 / alpha);
  for (int k = kmin; k <= kmax; ++k) {
    const cplx s = std::polar(rad, (theta + 2.0 * kPi * k) / alpha);
    const double phi = 0.5 * (s.real() + std::abs(s));
    if (phi > 1e-15) sing.push_back({s, phi});
  }
  std::sort(sing.begin(), sing.end(), [](const Singularity& a, const Singularity& b) { return a.phi < b.phi; });
  sing.insert(sing.begin(), Singularity{cplx(0.0, 0.0), 0.0});
  const std::size_t j1 = sing.size();  // regions 0..j1-1
  std::vector<double> phi(j1 + 1);
  for (std::size_t j = 0; j < j1; ++j) phi[j] = sing[j].phi;
  phi[j1] = kInf;
  std::vector<double> p(j1, 1.0);
  std::vector<double> q(j1, 1.0);
  p[0] = std::max(0.0, -2.0 * (alpha - beta + 1.0));
  q[j1 - 1] = kInf;

  std::vector<std::size_t> admissible;
  for (std::size_t j = 0; j < j1; ++j)
    if (phi[j] < (log_epsilon - kLogEps) / t && phi[j] < phi[j + 1]) admissible.push_back(j);

  std::vector<ContourParams> params(j1);
  std::size_t best = 0;
  for (int relax = 0;; ++relax) {
    double min_n = kInf;
    for (std::size_t j : admissible) {
      params[j] = (j + 1 < j1) ? optimal_bounded(t, phi[j], phi[j + 1], p[j], q[j], log_epsilon)
                               : optimal_unbounded(t, phi[j], p[j], log_epsilon);
      if (params[j].n < min_n) {
        min_n = params[j].n;
        best = j;
      }
    }
    if (min_n <= 200.0 || relax > 12) break;
    log_epsilon += std::log(10.0);
    r.accuracy_warning = true;
  }

  const ContourParams& cp = params[best];
  if (!std::isfinite(cp.n)) {
    r.value = std::numeric_limits<double>::quiet_NaN();
    r.accuracy_warning = true;
    return r;
  }
  const long nn = static_cast<long>(cp.n);
  cplx acc(0.0, 0.0);
  for (long k = -nn; k <= nn; ++k) {
    const double u = cp.h * static_cast<double>(k);
    const cplx zc = cp.mu * std::pow(cplx(1.0, u), 2);
    const cplx zd(-2.0 * cp.mu * u, 2.0 * cp.mu);
    const cplx f = std::pow(zc, alpha - beta) / (std::pow(zc, alpha) - z) * zd;
    acc += std::exp(zc * t) * f;
  }
  const cplx integral = cp.h * acc / (2.0 * kPi * cplx(0.0, 1.0));
  cplx residues(0.0, 0.0);
  for (std::size_t j = best + 1; j < j1; ++j)
    residues += (1.0 / alpha) * std::pow(sing[j].s, 1.0 - beta) * std::exp(t * sing[j].s);
  r.value = (integral + residues).real();
  r.error_estimate = std::exp(log_epsilon) * std::max(1.0, std::abs(r.value));
  return r;
}

MlResult ml_asymptotic(double alpha, double beta, double z) {
  check_params(alpha, beta, z);
  if (!(z < 0.0)) throw ParameterError("Mittag-Leffler asymptotic expansion requires z < 0");
  MlResult r;
  r.method = MlMethod::asymptotic;
  const double lz = std::log(-z);
  CompSum sum;
  double prev_env = kInf;
  double omitted = kInf;
  for (int k = 1; k < 1000; ++k) {
    const double x = beta - alpha * k;
    // envelope of |z^{-k} / Gamma(x)|, ignoring the sine factor that may vanish
    const double env = x > 0.0 ? std::exp(-k * lz) * std::abs(rgamma(x))
                               : std::exp(-k * lz + std::lgamma(1.0 - x)) / kPi;
    if (env > prev_env && k > 1) {
      omitted = env;
      break;
    }
    // -z^{-k} / Gamma(x), with z^{-k} = (-1)^k |z|^{-k}; log form keeps
    // |z|^{-k} and Gamma(1-x) from under/overflowing separately
    const double zsign = (k % 2 == 0) ? 1.0 : -1.0;
    double term;
    if (x > 0.0) {
      term = -zsign * std::exp(-k * lz) * rgamma(x);
    } else {
      const double r = std::round(x);
      const double sinpi = x == r ? 0.0 : ((static_cast<long long>(r) % 2 == 0) ? 1.0 : -1.0) * std::sin(kPi * (x - r));
      term = -zsign * sinpi / kPi * std::exp(-k * lz + std::lgamma(1.0 - x));
    }
    sum.add(term);
    prev_env = env;
    omitted = env;
    if (env < 1e-300) break;
  }
  double value = sum.value();
  if (alpha > 1.0) {
    // conjugate pair of poles at |z|^{1/alpha} exp(+-i pi/alpha)
    const cplx s = std::polar(std::pow(-z, 1.0 / alpha), kPi / alpha);
    value += 2.0 * ((1.0 / alpha) * std::pow(s, 1.0 - beta) * std::exp(s)).real();
  }
  r.value = value;
  r.error_estimate = omitted;
  r.accuracy_warning = omitted > 1e-10;
  return r;
}

MlResult mittag_leffler(double alpha, double beta, double z) {
  check_params(alpha, beta, z);
  if (z >= kMlSeriesLimit) return ml_series(alpha, beta, z);
  if (z >= kMlAsymptoticLimit) return ml_contour(alpha, beta, z);
  MlResult a = ml_asymptotic(alpha, beta, z);
  if (a.error_estimate <= 1e-13) return a;
  MlResult c = ml_contour(alpha, beta, z);
  if (c.accuracy_warning && c.error_estimate > a.error_estimate) return a;
  return c;
}

double ml(double alpha, double beta, double z) { return mittag_leffler(alpha, beta, z).value; }

SignReport ml_sign_scan(double alpha, double beta, double t_max, std::size_t n_grid, double lam) {
  if (!(t_max > 0.0)) throw ParameterError("ml_sign_scan: t_max must be positive");
  if (n_grid < 2) throw ParameterError("ml_sign_scan: n_grid must be >= 2");
  if (!(lam > 0.0)) throw ParameterError("ml_sign_scan: rate must be positive");
  SignReport rep;
  rep.min_value = kInf;
  const double log_lo = std::log(t_max * 1e-6);
  const double log_hi = std::log(t_max);
  for (std::size_t i = 0; i < n_grid; ++i) {
    const double t = (i + 1 == n_grid) ? t_max
                                       : std::exp(log_lo + (log_hi - log_lo) * static_cast<double>(i) /
                                                               static_cast<double>(n_grid - 1));
    const double v = ml(alpha, beta, -lam * std::pow(t, alpha));
    if (v < rep.min_value) {
      rep.min_value = v;
      rep.t_at_min = t;
    }
    if (!rep.first_negative_t && v < kMlNegativeThreshold) rep.first_negative_t = t;
  }
  return rep;
}

LaplaceCheck laplace_identity_check(double alpha, double gamma, double lam, double s, double T_trunc) {
  if (!(gamma > 0.0 && gamma < alpha)) throw ParameterError("laplace_identity_check: requires 0 < gamma < alpha");
  if (!(lam > 0.0 && s > 0.0 && T_trunc > 0.0))
    throw ParameterError("laplace_identity_check: lam, s and T_trunc must be positive");
  const quad::Integrand f = [&](double t) {
    return std::pow(t, gamma - 1.0) * ml(alpha, gamma, -lam * std::pow(t, alpha)) * std::exp(-s * t);
  };
  LaplaceCheck out;
  const double head_end = std::min(1.0, T_trunc);
  out.numeric = quad::integrate_singular(f, 0.0, head_end);
  if (T_trunc > head_end) {
    const std::size_t panels = static_cast<std::size_t>(std::ceil(2.0 * (T_trunc - head_end)));
    const auto mesh = quad::power_graded_mesh(head_end, T_trunc, panels, 1.0);
    out.numeric += quad::integrate_mesh(f, mesh, quad::gauss_legendre(16));
  }
  out.analytic = std::pow(s, alpha - gamma) / (std::pow(s, alpha) + lam);
  out.tail_bound = std::abs(f(T_trunc)) / s;
  out.accuracy_warning = out.tail_bound > 1e-7;
  return out;
}

double frac_ou_mean(double x, double alpha, double gamma0, double beta, double b, double t) {
  if (!(t > 0.0)) throw DomainError("frac_ou_mean: t must be positive");
  if (!(alpha > 0.5 && alpha < 2.0)) throw ParameterError("frac_ou_mean: alpha must lie in (1/2, 2)");
  if (!(gamma0 > 0.0)) throw ParameterError("frac_ou_mean: gamma0 must be positive");
  double out = 0.0;
  if (x != 0.0) out += x * std::pow(t, gamma0 - 1.0) * ml(alpha, gamma0, beta * std::pow(t, alpha));
  if (b != 0.0) {
    const quad::Integrand f = [&](double u) { return std::pow(u, alpha - 1.0) * ml(alpha, alpha, beta * std::pow(u, alpha)); };
    quad::SingularOptions opt;
    opt.layers = 40;
    out += b * quad::integrate_singular(f, 0.0, t, opt);
  }
  return out;
}

}  // namespace svesim
