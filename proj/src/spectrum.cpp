#include "kgo/spectrum.hpp"

#include "kgo/errors.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace kgo {
namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

double quartic_derivative(double gamma, int n, double E) {
  const double nn = static_cast<double>(n) * n;
  return 4.0 * E * E * E - 4.0 * E - 4.0 * nn * gamma;
}

double quartic_scale(double gamma, int n, double E) {
  const double nn = static_cast<double>(n) * n;
  const double e2 = E * E;
  return e2 * e2 + 2.0 * e2 + 4.0 * nn * std::abs(gamma * E) + 4.0 * nn + 1.0;
}

double relative_quartic_residual(double gamma, int n, double E) {
  return std::abs(quartic(gamma, n, E)) / quartic_scale(gamma, n, E);
}

double condition_derivative(double gamma, int n, double E) {
  const double lam = std::sqrt(1.0 + gamma * E);
  return 2.0 * E - n * gamma / lam;
}

double relative_condition_residual(double gamma, int n, double E) {
  const double g = quantization_condition(gamma, n, E);
  if (std::isnan(g)) return std::numeric_limits<double>::infinity();
  if (n == 0) return std::abs(g) / std::max(1.0, E * E);
  const double dg = condition_derivative(gamma, n, E);
  return std::abs(g) / std::max(1.0, std::abs(E * dg));
}

double polish_quartic(double gamma, int n, double E) {
  double best = E;
  double best_res = std::abs(quartic(gamma, n, E));
  for (int it = 0; it < 60 && best_res > 0.0; ++it) {
    const double d = quartic_derivative(gamma, n, E);
    if (d == 0.0) break;
    const double next = E - quartic(gamma, n, E) / d;
    if (!std::isfinite(next)) break;
    const double res = std::abs(quartic(gamma, n, next));
    if (res < best_res) {
      best = next;
      best_res = res;
    }
    if (next == E) break;
    E = next;
  }
  return best;
}

double polish_condition(double gamma, int n, double E) {
  double best = E;
  double best_res = relative_condition_residual(gamma, n, E);
  for (int it = 0; it < 20 && best_res > 0.0; ++it) {
    const double g = quantization_condition(gamma, n, E);
    const double d = condition_derivative(gamma, n, E);
    if (!std::isfinite(g) || !std::isfinite(d) || d == 0.0) break;
    const double next = E - g / d;
    const double res = relative_condition_residual(gamma, n, next);
    if (res < best_res) {
      best = next;
      best_res = res;
    }
    if (next == E) break;
    E = next;
  }
  return best;
}

EnergyLevel make_level(double gamma, int n, double E) {
  EnergyLevel level;
  level.n = n;
  level.E = E;
  level.lambda = std::sqrt(1.0 + gamma * E);
  level.quartic_residual = relative_quartic_residual(gamma, n, E);
  level.condition_residual = relative_condition_residual(gamma, n, E);
  return level;
}

bool sign_matches(Branch branch, double E) {
  return branch == Branch::particle ? E > 0.0 : E < 0.0;
}

}  // namespace

std::string_view to_string(Branch branch) {
  return branch == Branch::particle ? "particle" : "antiparticle";
}

Branch parse_branch(std::string_view text) {
  if (text == "particle") return Branch::particle;
  if (text == "antiparticle") return Branch::antiparticle;
  throw std::invalid_argument("unknown branch '" + std::string(text) + "'");
}

void ModelConfig::validate() const {
  if (!std::isfinite(gamma) || std::abs(gamma) >= 2.0)
    throw std::invalid_argument("gamma must be finite with |gamma| < 2");
  if (!(quartic_tol > 0.0)) throw std::invalid_argument("quartic_tol must be positive");
}

double quartic(double gamma, int n, double E) {
  const double nn = static_cast<double>(n) * n;
  const double e2 = E * E;
  return (e2 - 1.0) * (e2 - 1.0) - 4.0 * nn * (1.0 + gamma * E);
}

double quantization_condition(double gamma, int n, double E) {
  const double w = 1.0 + gamma * E;
  if (w < 0.0) return kNaN;
  return E * E - 1.0 - 2.0 * n * std::sqrt(w);
}

std::vector<double> quartic_real_roots(double gamma, int n) {
  if (n < 0) throw std::invalid_argument("quantum number must be non-negative");
  if (!std::isfinite(gamma)) throw std::invalid_argument("gamma must be finite");
  if (n == 0) return {-1.0, -1.0, 1.0, 1.0};

  // Companion matrix of E^4 + 0 E^3 - 2 E^2 - 4n^2 gamma E + (1 - 4n^2).
  const double nn = static_cast<double>(n) * n;
  const double c[4] = {1.0 - 4.0 * nn, -4.0 * nn * gamma, -2.0, 0.0};
  Eigen::Matrix4d companion = Eigen::Matrix4d::Zero();
  for (int i = 1; i < 4; ++i) companion(i, i - 1) = 1.0;
  for (int i = 0; i < 4; ++i) companion(i, 3) = -c[i];

  Eigen::EigenSolver<Eigen::Matrix4d> solver(companion, false);
  std::vector<double> roots;
  for (int i = 0; i < 4; ++i) {
    const std::complex<double> z = solver.eigenvalues()[i];
    if (std::abs(z.imag()) > 1e-6 * std::max(1.0, std::abs(z))) continue;
    const double E = polish_quartic(gamma, n, z.real());
    // A near-real eigenvalue of a genuinely complex pair does not polish to a zero.
    if (relative_quartic_residual(gamma, n, E) > 1e-12) continue;
    roots.push_back(E);
  }
  std::sort(roots.begin(), roots.end());
  return roots;
}

EnergyLevel select_physical(const std::vector<double>& roots, const ModelConfig& config, int n) {
  config.validate();
  if (n < 0) throw std::invalid_argument("quantum number must be non-negative");
  const double gamma = config.gamma;

  if (n == 0) {
    // E^2 = 1 for every gamma.
    const double E = config.branch == Branch::particle ? 1.0 : -1.0;
    if (1.0 + gamma * E < 0.0) throw NoPhysicalRoot(gamma, n, "1 + gamma E < 0");
    return make_level(gamma, n, E);
  }

  bool found = false;
  double chosen = 0.0;
  for (double root : roots) {
    if (!sign_matches(config.branch, root)) continue;
    if (1.0 + gamma * root < 0.0) continue;
    // Roots of E^2 - 1 = -2 n lambda enter only through squaring.
    if (relative_condition_residual(gamma, n, root) > 1e-6) continue;
    const double E = polish_condition(gamma, n, root);
    if (!sign_matches(config.branch, E) || 1.0 + gamma * E < 0.0) continue;
    if (relative_condition_residual(gamma, n, E) >= config.quartic_tol) continue;
    if (!found || std::abs(E) < std::abs(chosen)) {
      chosen = E;
      found = true;
    }
  }
  if (!found)
    throw NoPhysicalRoot(gamma, n,
                         std::string("no ") + std::string(to_string(config.branch)) +
                             " root satisfies the unsquared condition");
  return make_level(gamma, n, chosen);
}

EnergyLevel energy_level(const ModelConfig& config, int n) {
  return select_physical(quartic_real_roots(config.gamma, n), config, n);
}

std::vector<EnergyLevel> spectrum(const ModelConfig& config, int n_max) {
  if (n_max < 0) throw std::invalid_argument("n_max must be non-negative");
  config.validate();
  std::vector<EnergyLevel> levels;
  levels.reserve(n_max + 1);
  for (int n = 0; n <= n_max; ++n) levels.push_back(energy_level(config, n));
  return levels;
}

double asymptote(double gamma) {
  if (gamma == 0.0) throw UnboundedSpectrum();
  return 1.0 / std::abs(gamma);
}

}  // namespace kgo
