#include "kgo/quadrature.hpp"

#include "kgo/errors.hpp"

#include <Eigen/Dense>
#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <queue>
#include <stdexcept>

namespace kgo {
namespace {

// Symmetric nested rule on [-1, 1]: non-negative abscissae with Kronrod
// weights and the embedded Gauss weights (zero on Kronrod-only points).
struct NestedRule {
  std::vector<double> x;
  std::vector<double> kronrod;
  std::vector<double> gauss;
};

template <unsigned N>
NestedRule make_rule() {
  using boost::math::quadrature::gauss;
  using boost::math::quadrature::gauss_kronrod;
  const auto& xs = gauss_kronrod<double, N>::abscissa();
  const auto& wk = gauss_kronrod<double, N>::weights();
  const auto& wg = gauss<double, (N - 1) / 2>::weights();
  constexpr bool zero_is_gauss = ((N - 1) / 2) % 2 == 1;

  NestedRule rule;
  rule.x.assign(xs.begin(), xs.end());
  rule.kronrod.assign(wk.begin(), wk.end());
  rule.gauss.assign(xs.size(), 0.0);
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const bool is_gauss = zero_is_gauss ? (i % 2 == 0) : (i % 2 == 1);
    if (is_gauss) rule.gauss[i] = wg[i / 2];
  }
  return rule;
}

const NestedRule& rule_for(int order) {
  static const NestedRule r15 = make_rule<15>();
  static const NestedRule r21 = make_rule<21>();
  static const NestedRule r31 = make_rule<31>();
  static const NestedRule r41 = make_rule<41>();
  static const NestedRule r51 = make_rule<51>();
  static const NestedRule r61 = make_rule<61>();
  switch (order) {
    case 15: return r15;
    case 21: return r21;
    case 31: return r31;
    case 41: return r41;
    case 51: return r51;
    case 61: return r61;
    default: throw std::invalid_argument("unsupported panel_order");
  }
}

struct Panel {
  double a;
  double b;
  double value;
  double error;
  int depth;
};

struct ByError {
  bool operator()(const Panel& lhs, const Panel& rhs) const {
    if (lhs.error != rhs.error) return lhs.error < rhs.error;
    return lhs.a > rhs.a;
  }
};

Panel evaluate_panel(const Integrand& f, const NestedRule& rule, double a, double b, int depth) {
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  double k = 0.0, g = 0.0, l1 = 0.0;
  for (std::size_t i = 0; i < rule.x.size(); ++i) {
    double fsum, fabs_sum;
    if (rule.x[i] == 0.0) {
      fsum = f(c);
      fabs_sum = std::abs(fsum);
    } else {
      const double fp = f(c + h * rule.x[i]);
      const double fm = f(c - h * rule.x[i]);
      fsum = fp + fm;
      fabs_sum = std::abs(fp) + std::abs(fm);
    }
    k += rule.kronrod[i] * fsum;
    g += rule.gauss[i] * fsum;
    l1 += rule.kronrod[i] * fabs_sum;
  }
  constexpr double eps = std::numeric_limits<double>::epsilon();
  const double err = std::max(std::abs(k - g), 50.0 * eps * l1) * h;
  return Panel{a, b, k * h, err, depth};
}

}  // namespace

void QuadratureSpec::validate() const {
  if (!(rel_tol > 0.0) || !(abs_tol > 0.0))
    throw std::invalid_argument("quadrature tolerances must be positive");
  if (max_depth < 0) throw std::invalid_argument("max_depth must be non-negative");
  if (panel_order < 3) throw std::invalid_argument("panel_order must be >= 3");
  rule_for(panel_order);
}

IntegralResult integrate(const Integrand& f, double a, double b, const QuadratureSpec& spec,
                         std::span<const double> breakpoints) {
  spec.validate();
  if (!(a < b)) throw std::invalid_argument("integrate requires a < b");
  const NestedRule& rule = rule_for(spec.panel_order);

  std::vector<double> cuts{a};
  for (double p : breakpoints)
    if (p > a && p < b) cuts.push_back(p);
  cuts.push_back(b);
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

  std::priority_queue<Panel, std::vector<Panel>, ByError> queue;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i)
    queue.push(evaluate_panel(f, rule, cuts[i], cuts[i + 1], 0));

  double value = 0.0, error = 0.0;
  auto exact_totals = [&queue, &value, &error]() {
    std::vector<Panel> all;
    for (auto copy = queue; !copy.empty(); copy.pop()) all.push_back(copy.top());
    std::sort(all.begin(), all.end(), [](const Panel& l, const Panel& r) { return l.a < r.a; });
    value = 0.0;
    error = 0.0;
    for (const auto& p : all) {
      value += p.value;
      error += p.error;
    }
  };
  auto converged = [&]() {
    return error <= std::max(spec.rel_tol * std::abs(value), spec.abs_tol);
  };

  // Running sums drive refinement; the ordered re-summation decides termination.
  exact_totals();
  for (;;) {
    if (converged()) {
      exact_totals();
      if (converged()) break;
    }
    const Panel worst = queue.top();
    if (worst.depth >= spec.max_depth) {
      exact_totals();
      throw NoConvergence(value, error);
    }
    queue.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    const Panel left = evaluate_panel(f, rule, worst.a, mid, worst.depth + 1);
    const Panel right = evaluate_panel(f, rule, mid, worst.b, worst.depth + 1);
    value += left.value + right.value - worst.value;
    error += left.error + right.error - worst.error;
    queue.push(left);
    queue.push(right);
  }
  return IntegralResult{value, error, static_cast<int>(queue.size())};
}

IntegralResult integrate_even(const Integrand& f, double R, const QuadratureSpec& spec,
                              std::span<const double> breakpoints) {
  IntegralResult half = integrate(f, 0.0, R, spec, breakpoints);
  return IntegralResult{2.0 * half.value, 2.0 * half.error_estimate, half.panels_used};
}

GaussHermiteRule gauss_hermite_rule(int m) {
  if (m < 1) throw std::invalid_argument("gauss_hermite_rule requires m >= 1");
  Eigen::VectorXd diag = Eigen::VectorXd::Zero(m);
  Eigen::VectorXd sub(std::max(m - 1, 0));
  for (int k = 1; k < m; ++k) sub[k - 1] = std::sqrt(0.5 * k);

  GaussHermiteRule rule;
  rule.nodes.resize(m);
  rule.weights.resize(m);
  if (m == 1) {
    rule.nodes[0] = 0.0;
    rule.weights[0] = std::sqrt(std::numbers::pi);
    return rule;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
  solver.computeFromTridiagonal(diag, sub, Eigen::ComputeEigenvectors);
  const double sqrt_pi = std::sqrt(std::numbers::pi);
  for (int i = 0; i < m; ++i) {
    const double v0 = solver.eigenvectors()(0, i);
    rule.nodes[i] = solver.eigenvalues()[i];
    rule.weights[i] = sqrt_pi * v0 * v0;
  }
  // Exact symmetry about the origin.
  for (int i = 0; i < m / 2; ++i) {
    const int j = m - 1 - i;
    const double x = 0.5 * (rule.nodes[j] - rule.nodes[i]);
    const double w = 0.5 * (rule.weights[i] + rule.weights[j]);
    rule.nodes[i] = -x;
    rule.nodes[j] = x;
    rule.weights[i] = rule.weights[j] = w;
  }
  if (m % 2 == 1) rule.nodes[m / 2] = 0.0;
  return rule;
}

double gauss_hermite(const Integrand& poly, double lambda, int m) {
  if (!(lambda > 0.0)) throw std::invalid_argument("gauss_hermite requires lambda > 0");
  const GaussHermiteRule rule = gauss_hermite_rule(m);
  const double scale = 1.0 / std::sqrt(lambda);
  double sum = 0.0;
  for (int i = 0; i < m; ++i) sum += rule.weights[i] * poly(rule.nodes[i] * scale);
  return sum * scale;
}

}  // namespace kgo
