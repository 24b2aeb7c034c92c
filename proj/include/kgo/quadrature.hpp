#pragma once

#include <functional>
#include <span>
#include <vector>

namespace kgo {

/// Tolerances and rule selection for adaptive integration.
///
/// `panel_order` is the number of Kronrod points of the nested Gauss/Kronrod
/// pair used on every panel; supported orders are 15, 21, 31, 41, 51 and 61.
struct QuadratureSpec {
  double rel_tol = 1e-10;
  double abs_tol = 1e-14;
  int max_depth = 40;
  int panel_order = 15;

  /// Throws std::invalid_argument when a field is out of range.
  void validate() const;
};

struct IntegralResult {
  double value = 0.0;
  double error_estimate = 0.0;
  int panels_used = 0;
};

using Integrand = std::function<double(double)>;

/// Globally adaptive Gauss-Kronrod integration of f over [a, b].
///
/// The interval is first cut at every breakpoint strictly inside (a, b); the
/// panel with the largest error estimate is then bisected until the summed
/// error estimate is below max(rel_tol * |value|, abs_tol). Throws
/// NoConvergence when a panel would exceed `max_depth` bisections.
IntegralResult integrate(const Integrand& f, double a, double b, const QuadratureSpec& spec = {},
                         std::span<const double> breakpoints = {});

/// 2 * integrate(f, 0, R). The caller guarantees f is even.
IntegralResult integrate_even(const Integrand& f, double R, const QuadratureSpec& spec = {},
                              std::span<const double> breakpoints = {});

/// Nodes and weights of an m-point rule for the weight exp(-x^2) on the real line.
struct GaussHermiteRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// Golub-Welsch construction; nodes ascending. Requires m >= 1.
GaussHermiteRule gauss_hermite_rule(int m);

/// Integral of poly(x) * exp(-lambda x^2) over the real line with an m-point
/// Gauss-Hermite rule. Exact to rounding when poly has degree <= 2m - 1.
double gauss_hermite(const Integrand& poly, double lambda, int m);

}  // namespace kgo
