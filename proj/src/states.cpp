#include "kgo/states.hpp"

#include "kgo/errors.hpp"
#include "kgo/hermite.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace kgo {
namespace {

void require_weight_positive(const WaveState& state, std::string_view what) {
  if (!state.validity().weight_positive || !state.validity().norm_positive)
    throw InvalidDensity(std::string(what) + " needs a positive density, but the " +
                         std::string(to_string(state.space())) +
                         " weight changes sign on the truncation domain (n = " +
                         std::to_string(state.n()) + ", gamma = " + std::to_string(state.gamma()) +
                         ")");
}

void require_ascending(const std::vector<double>& grid) {
  for (std::size_t i = 1; i < grid.size(); ++i)
    if (!(grid[i] > grid[i - 1])) throw std::invalid_argument("grid must be strictly increasing");
}

}  // namespace

std::string_view to_string(Space space) {
  return space == Space::coordinate ? "coordinate" : "momentum";
}

std::string_view to_string(DensityKind kind) {
  switch (kind) {
    case DensityKind::rho: return "rho";
    case DensityKind::fisher_density: return "fisher";
    case DensityKind::shannon_density: return "shannon";
  }
  return "rho";
}

Space parse_space(std::string_view text) {
  if (text == "coordinate" || text == "x") return Space::coordinate;
  if (text == "momentum" || text == "p") return Space::momentum;
  throw std::invalid_argument("unknown space '" + std::string(text) + "'");
}

DensityKind parse_density_kind(std::string_view text) {
  if (text == "rho") return DensityKind::rho;
  if (text == "fisher" || text == "fisher_density") return DensityKind::fisher_density;
  if (text == "shannon" || text == "shannon_density") return DensityKind::shannon_density;
  throw std::invalid_argument("unknown density kind '" + std::string(text) + "'");
}

double truncation_radius(int n, double lambda, Space space) {
  const double l = space == Space::coordinate ? lambda : 1.0 / lambda;
  return std::sqrt((2.0 * n + 1.0) / l) + 12.0 / std::sqrt(l);
}

double WaveState::weight(double a) const { return level_.E + curvature_ * a * a; }

double WaveState::density(double a) const {
  const double phi = hermite_weighted(level_.n, scale_ * a);
  return scale_ / denominator_ * phi * phi * weight(a);
}

double WaveState::density_derivative(double a) const {
  const double xi = scale_ * a;
  const HermitePair h = hermite_pair(level_.n, xi);
  const double dphi = std::sqrt(2.0 * level_.n) * h.previous - xi * h.value;
  return scale_ / denominator_ * h.value *
         (2.0 * scale_ * dphi * weight(a) + 2.0 * curvature_ * a * h.value);
}

double WaveState::score(double a) const {
  const double xi = scale_ * a;
  const HermitePair h = hermite_pair(level_.n, xi);
  const double dlog_phi = std::sqrt(2.0 * level_.n) * h.previous_over_value - xi;
  return 2.0 * scale_ * dlog_phi + 2.0 * curvature_ * a / weight(a);
}

double WaveState::log_density(double a) const {
  const HermitePair h = hermite_pair(level_.n, scale_ * a);
  return std::log(scale_ / denominator_) + 2.0 * h.log_abs_value + std::log(weight(a));
}

double WaveState::fisher_density(double a) const {
  const double xi = scale_ * a;
  const HermitePair h = hermite_pair(level_.n, xi);
  const double dphi = std::sqrt(2.0 * level_.n) * h.previous - xi * h.value;
  const double w = weight(a);
  const double t = 2.0 * scale_ * dphi * w + 2.0 * curvature_ * a * h.value;
  return scale_ / denominator_ * t * t / w;
}

double WaveState::shannon_density(double a) const {
  const double r = density(a);
  if (r < 1e-300) return 0.0;
  return r * log_density(a);
}

std::optional<double> WaveState::weight_zero() const {
  if (curvature_ == 0.0 || level_.E * curvature_ >= 0.0) return std::nullopt;
  return std::sqrt(-level_.E / curvature_);
}

std::vector<double> WaveState::positive_nodes() const {
  std::vector<double> nodes;
  for (double xi : hermite_positive_zeros(level_.n)) {
    const double a = xi / scale_;
    if (a < radius_) nodes.push_back(a);
  }
  if (auto z = weight_zero(); z && *z < radius_) {
    auto it = std::lower_bound(nodes.begin(), nodes.end(), *z);
    nodes.insert(it, *z);
  }
  return nodes;
}

WaveState make_state(const EnergyLevel& level, double gamma, Space space,
                     Normalization normalization, const QuadratureSpec& spec) {
  const double lam = level.lambda;
  if (!(lam > 0.0) || !std::isfinite(lam))
    throw std::domain_error("effective width lambda must be positive");
  const int n = level.n;
  const double E = level.E;
  const double half = n + 0.5;
  // ln(1 / (2^n n!)).
  const double log_inv_hermite_norm = -n * std::numbers::ln2 - std::lgamma(n + 1.0);
  const double sqrt_pi = std::sqrt(std::numbers::pi);

  WaveState s;
  s.space_ = space;
  s.level_ = level;
  s.gamma_ = gamma;
  if (space == Space::coordinate) {
    s.scale_ = std::sqrt(lam);
    s.curvature_ = -0.5 * gamma;
    s.denominator_ = E - gamma * half / (2.0 * lam);
    s.norm_const_sq_ =
        std::exp(log_inv_hermite_norm) * std::sqrt(lam) / sqrt_pi / s.denominator_;
  } else {
    s.scale_ = 1.0 / std::sqrt(lam);
    s.curvature_ = gamma / (2.0 * lam * lam * lam * lam);
    s.denominator_ = E + gamma * half / (2.0 * lam * lam * lam);
    s.norm_const_sq_ =
        std::exp(log_inv_hermite_norm) / (std::sqrt(lam) * sqrt_pi) / s.denominator_;
  }
  s.validity_.norm_positive = s.denominator_ > 0.0;
  if (!s.validity_.norm_positive && normalization == Normalization::strict)
    throw NonNormalizable(std::string(to_string(space)), s.denominator_);

  s.radius_ = truncation_radius(n, lam, space);
  // The weight is monotone in a^2, so its sign on [-R, R] is fixed by the endpoints.
  s.validity_.weight_positive = s.weight(0.0) > 0.0 && s.weight(s.radius_) > 0.0;

  const std::vector<double> cuts = s.positive_nodes();
  s.norm_integral_ =
      integrate_even([&s](double a) { return s.density(a); }, s.radius_, spec, cuts).value;
  return s;
}

double rho(const WaveState& state, double a) { return state.density(a); }

std::vector<double> make_grid(double lo, double hi, int count) {
  if (count < 2) throw std::invalid_argument("grid count must be >= 2");
  if (!(lo < hi)) throw std::invalid_argument("grid requires min < max");
  std::vector<double> grid(count);
  const double step = (hi - lo) / (count - 1);
  for (int i = 0; i < count; ++i) grid[i] = lo + i * step;
  grid.back() = hi;
  return grid;
}

DensityCurve rho_curve(const WaveState& state, const std::vector<double>& grid) {
  require_ascending(grid);
  DensityCurve curve{state.space(), DensityKind::rho, grid, {}};
  curve.values.reserve(grid.size());
  for (double a : grid) curve.values.push_back(state.density(a));
  return curve;
}

DensityCurve fisher_density_curve(const WaveState& state, const std::vector<double>& grid) {
  require_ascending(grid);
  require_weight_positive(state, "Fisher density");
  DensityCurve curve{state.space(), DensityKind::fisher_density, grid, {}};
  curve.values.reserve(grid.size());
  for (double a : grid) curve.values.push_back(state.fisher_density(a));
  return curve;
}

DensityCurve shannon_density_curve(const WaveState& state, const std::vector<double>& grid) {
  require_ascending(grid);
  require_weight_positive(state, "Shannon density");
  DensityCurve curve{state.space(), DensityKind::shannon_density, grid, {}};
  curve.values.reserve(grid.size());
  for (double a : grid) curve.values.push_back(state.shannon_density(a));
  return curve;
}

DensityCurve density_curve(const WaveState& state, DensityKind kind,
                           const std::vector<double>& grid) {
  switch (kind) {
    case DensityKind::rho: return rho_curve(state, grid);
    case DensityKind::fisher_density: return fisher_density_curve(state, grid);
    case DensityKind::shannon_density: return shannon_density_curve(state, grid);
  }
  return rho_curve(state, grid);
}

}  // namespace kgo
