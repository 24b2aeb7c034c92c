#pragma once

#include <cmath>
#include <functional>
#include <vector>

// Independent reference computations used only by the tests. None of them
// calls into the library.
namespace oracle {

inline double simpson(const std::function<double(double)>& f, double a, double b, int panels) {
  if (panels % 2) ++panels;
  const double h = (b - a) / panels;
  double sum = f(a) + f(b);
  for (int i = 1; i < panels; ++i) sum += (i % 2 ? 4.0 : 2.0) * f(a + i * h);
  return sum * h / 3.0;
}

inline double bisect(const std::function<double(double)>& f, double lo, double hi) {
  double flo = f(lo);
  for (int it = 0; it < 200 && hi - lo > 1e-15 * std::max(1.0, std::abs(lo)); ++it) {
    const double mid = 0.5 * (lo + hi);
    const double fm = f(mid);
    if ((fm < 0) == (flo < 0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

// Real roots of the quartic by a sign scan over [-L, L] followed by bisection.
inline std::vector<double> quartic_roots_by_scan(double gamma, int n, double L = 20.0,
                                                 int steps = 200000) {
  auto q = [=](double E) {
    const double nn = 4.0 * n * n;
    return E * E * E * E - 2.0 * E * E - nn * gamma * E + 1.0 - nn;
  };
  std::vector<double> roots;
  const double h = 2.0 * L / steps;
  double prev = q(-L);
  for (int i = 1; i <= steps; ++i) {
    const double x = -L + i * h;
    const double cur = q(x);
    if (cur == 0.0) {
      roots.push_back(x);
    } else if ((prev < 0) != (cur < 0) && prev != 0.0) {
      roots.push_back(bisect(q, x - h, x));
    }
    prev = cur;
  }
  return roots;
}

// Particle-branch energy by bisection on E^2 - 1 - 2n sqrt(1 + gamma E).
inline double particle_energy(double gamma, int n) {
  if (n == 0) return 1.0;
  auto g = [=](double E) { return E * E - 1.0 - 2.0 * n * std::sqrt(1.0 + gamma * E); };
  double hi = gamma < 0.0 ? -1.0 / gamma : 4.0 * n + 4.0;
  if (gamma > 0.0) hi = std::max(hi, 4.0 * n * gamma + 4.0);
  return bisect(g, 1.0, hi);
}

// Orthonormal Hermite function from the textbook three-term recurrence.
inline double hermite_function(int n, double x) {
  double p0 = std::pow(M_PI, -0.25) * std::exp(-0.5 * x * x);
  if (n == 0) return p0;
  double p1 = std::sqrt(2.0) * x * p0;
  for (int k = 2; k <= n; ++k) {
    const double p2 = std::sqrt(2.0 / k) * x * p1 - std::sqrt((k - 1.0) / k) * p0;
    p0 = p1;
    p1 = p2;
  }
  return p1;
}

// Density rho(a) = (s / D) phi_n(s a)^2 (E + c a^2) rebuilt from E and lambda.
struct Density {
  double s, c, D, E;
  int n;
  double operator()(double a) const {
    const double phi = hermite_function(n, s * a);
    return (s / D) * phi * phi * (E + c * a * a);
  }
};

inline Density coordinate_density(double gamma, int n, double E) {
  const double lam = std::sqrt(1.0 + gamma * E);
  return {std::sqrt(lam), -gamma / 2.0, E - gamma * (n + 0.5) / (2.0 * lam), E, n};
}

inline Density momentum_density(double gamma, int n, double E) {
  const double lam = std::sqrt(1.0 + gamma * E);
  const double l2 = lam * lam;
  return {1.0 / std::sqrt(lam), gamma / (2.0 * l2 * l2), E + gamma * (n + 0.5) / (2.0 * lam * l2),
          E, n};
}

}  // namespace oracle
