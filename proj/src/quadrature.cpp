#include "svesim/quadrature.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <stdexcept>

namespace svesim::quad {

namespace {

GaussRule build_rule(std::size_t n) {
  GaussRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  for (std::size_t i = 0; i < (n + 1) / 2; ++i) {
    // Tricomi initial guess, then Newton on P_n
    double x = std::cos(std::numbers::pi * (static_cast<double>(i) + 0.75) / (static_cast<double>(n) + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0;
      double p1 = x;
      for (std::size_t k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / static_cast<double>(k);
        p0 = p1;
        p1 = p2;
      }
      if (n == 1) p0 = 1.0;
      dp = static_cast<double>(n) * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    // recompute derivative at the converged root
    double p0 = 1.0;
    double p1 = x;
    for (std::size_t k = 2; k <= n; ++k) {
      const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / static_cast<double>(k);
      p0 = p1;
      p1 = p2;
    }
    dp = static_cast<double>(n) * (x * p1 - p0) / (x * x - 1.0);
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.nodes[i] = -x;
    rule.nodes[n - 1 - i] = x;
    rule.weights[i] = w;
    rule.weights[n - 1 - i] = w;
  }
  if (n % 2 == 1) rule.nodes[n / 2] = 0.0;
  return rule;
}

}  // namespace

const GaussRule& gauss_legendre(std::size_t n) {
  if (n == 0) throw std::invalid_argument("gauss_legendre: n must be positive");
  static std::mutex mu;
  static std::map<std::size_t, std::unique_ptr<GaussRule>> cache;
  std::lock_guard lock(mu);
  auto& slot = cache[n];
  if (!slot) slot = std::make_unique<GaussRule>(build_rule(n));
  return *slot;
}

double integrate(const Integrand& f, double a, double b, const GaussRule& rule) {
  const double half = 0.5 * (b - a);
  const double mid = 0.5 * (a + b);
  double sum = 0.0;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) sum += rule.weights[i] * f(mid + half * rule.nodes[i]);
  return half * sum;
}

double integrate_mesh(const Integrand& f, std::span<const double> mesh, const GaussRule& rule) {
  double sum = 0.0;
  for (std::size_t i = 0; i + 1 < mesh.size(); ++i) sum += integrate(f, mesh[i], mesh[i + 1], rule);
  return sum;
}

std::vector<double> power_graded_mesh(double a, double b, std::size_t panels, double grading) {
  if (panels == 0) throw std::invalid_argument("power_graded_mesh: panels must be positive");
  std::vector<double> mesh(panels + 1);
  for (std::size_t i = 0; i <= panels; ++i)
    mesh[i] = a + (b - a) * std::pow(static_cast<double>(i) / static_cast<double>(panels), grading);
  mesh.back() = b;
  return mesh;
}

std::vector<double> geometric_mesh(double a, double b, std::size_t layers, double ratio,
                                   std::size_t uniform_panels) {
  if (uniform_panels == 0) throw std::invalid_argument("geometric_mesh: need at least one uniform panel");
  const double d = (b - a) / static_cast<double>(uniform_panels);
  std::vector<double> mesh;
  mesh.reserve(layers + uniform_panels + 2);
  mesh.push_back(a);
  for (std::size_t l = layers; l >= 1; --l) mesh.push_back(a + d * std::pow(ratio, static_cast<double>(l)));
  for (std::size_t i = 1; i <= uniform_panels; ++i) mesh.push_back(a + d * static_cast<double>(i));
  mesh.back() = b;
  return mesh;
}

namespace {

// Geometric layers towards a mirrored (right) end stop where the panels would
// fall below the spacing of doubles near b: f(a + b - u) cannot resolve
// distances to b much smaller than ulp(b).
std::size_t right_layers(const SingularOptions& opt, double a, double b, std::size_t panels) {
  const double scale = std::max(std::abs(a), std::abs(b));
  const double d = (b - a) / static_cast<double>(panels);
  const double w_min = 1e-12 * scale;
  if (!(w_min > 0.0) || d <= w_min) return std::min<std::size_t>(opt.layers, 1);
  const double cap = std::floor(std::log(w_min / d) / std::log(opt.ratio));
  return std::min(opt.layers, static_cast<std::size_t>(std::max(1.0, cap)));
}

}  // namespace

double integrate_singular(const Integrand& f, double a, double b, const SingularOptions& opt) {
  if (!(b > a)) return 0.0;
  const auto& rule = gauss_legendre(opt.order);
  if (opt.singular_left && opt.singular_right) {
    const double mid = 0.5 * (a + b);
    SingularOptions half = opt;
    half.uniform_panels = std::max<std::size_t>(1, opt.uniform_panels / 2);
    half.singular_right = false;
    const double left = integrate_singular(f, a, mid, half);
    // mirror the right half so the refinement sits at b
    half.layers = right_layers(half, a, b, 2 * half.uniform_panels);
    const Integrand g = [&](double u) { return f(a + b - u); };
    const double right = integrate_singular(g, a, mid, half);
    return left + right;
  }
  if (opt.singular_right) {
    SingularOptions mirrored = opt;
    mirrored.singular_left = true;
    mirrored.singular_right = false;
    mirrored.layers = right_layers(opt, a, b, opt.uniform_panels);
    const Integrand g = [&](double u) { return f(a + b - u); };
    return integrate_singular(g, a, b, mirrored);
  }
  if (!opt.singular_left) {
    const auto mesh = power_graded_mesh(a, b, opt.uniform_panels, 1.0);
    return integrate_mesh(f, mesh, rule);
  }
  const auto mesh = geometric_mesh(a, b, opt.layers, opt.ratio, opt.uniform_panels);
  return integrate_mesh(f, mesh, rule);
}

double integrate_adaptive(const Integrand& f, double a, double b, double tol, double* error_estimate) {
  double err = 0.0;
  const double value = boost::math::quadrature::gauss_kronrod<double, 15>::integrate(f, a, b, 20, tol, &err);
  if (error_estimate) *error_estimate = err;
  return value;
}

}  // namespace svesim::quad
