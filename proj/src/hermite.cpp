#include "kgo/hermite.hpp"

#include "kgo/quadrature.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace kgo {
namespace {

constexpr double kRescale = 1e150;
const double kLogRescale = std::log(kRescale);

}  // namespace

HermitePair hermite_pair(int n, double xi) {
  if (n < 0) throw std::invalid_argument("hermite order must be non-negative");
  // pi^(-1/4)
  const double p0 = std::exp(-0.25 * std::log(std::numbers::pi));
  double prev = 0.0, cur = p0, log_scale = 0.0;
  for (int k = 0; k < n; ++k) {
    const double next =
        std::sqrt(2.0 / (k + 1)) * xi * cur - std::sqrt(static_cast<double>(k) / (k + 1)) * prev;
    prev = cur;
    cur = next;
    if (std::abs(cur) > kRescale) {
      cur /= kRescale;
      prev /= kRescale;
      log_scale += kLogRescale;
    }
  }
  const double log_factor = log_scale - 0.5 * xi * xi;
  HermitePair out;
  out.value = cur * std::exp(log_factor);
  out.previous = prev * std::exp(log_factor);
  out.log_abs_value = cur == 0.0 ? -std::numeric_limits<double>::infinity()
                                 : std::log(std::abs(cur)) + log_factor;
  out.previous_over_value = prev / cur;
  return out;
}

double hermite_weighted(int n, double xi) { return hermite_pair(n, xi).value; }

double hermite_weighted_derivative(int n, double xi) {
  const HermitePair h = hermite_pair(n, xi);
  return std::sqrt(2.0 * n) * h.previous - xi * h.value;
}

double hermite_polynomial(int n, double x) {
  if (n < 0) throw std::invalid_argument("hermite order must be non-negative");
  double prev = 0.0, cur = 1.0;
  for (int k = 0; k < n; ++k) {
    const double next = 2.0 * x * cur - 2.0 * k * prev;
    prev = cur;
    cur = next;
  }
  return cur;
}

std::vector<double> hermite_positive_zeros(int n) {
  if (n < 0) throw std::invalid_argument("hermite order must be non-negative");
  if (n == 0) return {};
  const GaussHermiteRule rule = gauss_hermite_rule(n);
  std::vector<double> zeros;
  for (double x : rule.nodes)
    if (x > 0.0) zeros.push_back(x);
  return zeros;
}

}  // namespace kgo
