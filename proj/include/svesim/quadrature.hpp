#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace svesim::quad {

using Integrand = std::function<double(double)>;

/// Gauss-Legendre rule on [-1, 1].
struct GaussRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// n-point Gauss-Legendre rule (Newton iteration on P_n). Rules are cached.
const GaussRule& gauss_legendre(std::size_t n);

double integrate(const Integrand& f, double a, double b, const GaussRule& rule);

/// Composite rule on a mesh given by its breakpoints.
double integrate_mesh(const Integrand& f, std::span<const double> mesh, const GaussRule& rule);

/// Breakpoints a = x_0 < ... < x_P = b with x_i = a + (b-a)(i/P)^grading,
/// clustered at a. grading = 1 gives a uniform mesh.
std::vector<double> power_graded_mesh(double a, double b, std::size_t panels, double grading);

/// Geometric refinement towards a: [a, a+r^L d], ..., [a+r d, a+d] followed by
/// `uniform_panels` equal panels on the remaining interval; d = (b-a)/uniform_panels.
std::vector<double> geometric_mesh(double a, double b, std::size_t layers, double ratio,
                                   std::size_t uniform_panels);

struct SingularOptions {
  std::size_t layers = 48;        // geometric layers at each singular end
  double ratio = 0.2;             // layer shrink factor
  std::size_t uniform_panels = 16;
  std::size_t order = 16;         // Gauss points per panel
  bool singular_left = true;
  bool singular_right = false;
};

/// Integral of f over [a, b] for integrands with integrable algebraic
/// singularities at one or both ends. f is never evaluated at an endpoint.
/// A right-end singularity is resolved only down to about 1e-12 max(|a|, |b|),
/// the distance to b that f(t) can still see; put singular points at the
/// left end (substitute u = b - t in f) when full accuracy is needed.
double integrate_singular(const Integrand& f, double a, double b, const SingularOptions& opt = {});

/// Adaptive Gauss-Kronrod (15 points) for smooth integrands.
double integrate_adaptive(const Integrand& f, double a, double b, double tol = 1e-12,
                          double* error_estimate = nullptr);

}  // namespace svesim::quad
