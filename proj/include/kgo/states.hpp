#pragma once

#include "kgo/quadrature.hpp"
#include "kgo/spectrum.hpp"

#include <optional>
#include <string_view>
#include <vector>

namespace kgo {

enum class Space { coordinate, momentum };
enum class DensityKind { rho, fisher_density, shannon_density };

std::string_view to_string(Space space);
std::string_view to_string(DensityKind kind);
Space parse_space(std::string_view text);
/// Accepts "rho", "fisher" / "fisher_density", "shannon" / "shannon_density".
DensityKind parse_density_kind(std::string_view text);

struct ValidityFlags {
  /// E - dV/dE > 0 on the whole truncation domain.
  bool weight_positive = false;
  /// The closed-form normalization denominator is positive.
  bool norm_positive = false;
};

/// strict refuses non-normalizable states; forensic builds them anyway with
/// the closed-form (negative) normalization so that formal moments can be compared.
enum class Normalization { strict, forensic };

/// A normalized eigenstate in one representation with the energy-weighted density
///
///   rho(a) = (s / D) phi_n(s a)^2 (E + c a^2),
///
/// where s is sqrt(lambda) in coordinate space and 1/sqrt(lambda) in momentum
/// space, c = -gamma/2 (coordinate) or gamma / (2 lambda^4) (momentum), and
/// D = E + c (n + 1/2) / s^2 is the closed-form normalization denominator.
/// Immutable after construction.
class WaveState {
 public:
  Space space() const noexcept { return space_; }
  const EnergyLevel& level() const noexcept { return level_; }
  int n() const noexcept { return level_.n; }
  double gamma() const noexcept { return gamma_; }
  /// Closed-form C_n^2 or C'_n^2; underflows to zero for very large n.
  double norm_const_sq() const noexcept { return norm_const_sq_; }
  double denominator() const noexcept { return denominator_; }
  double scale() const noexcept { return scale_; }
  double weight_curvature() const noexcept { return curvature_; }
  double truncation_radius() const noexcept { return radius_; }
  const ValidityFlags& validity() const noexcept { return validity_; }
  bool forensic() const noexcept { return !validity_.norm_positive; }
  /// Integral of rho over [-R, R] computed at construction.
  double norm_integral() const noexcept { return norm_integral_; }

  /// Energy weight E - dV/dE.
  double weight(double a) const;
  double density(double a) const;
  double density_derivative(double a) const;
  /// d ln rho / da; undefined at zeros of rho.
  double score(double a) const;
  /// ln rho evaluated in log space; requires rho(a) > 0.
  double log_density(double a) const;
  /// rho'^2 / rho, finite at the Hermite nodes.
  double fisher_density(double a) const;
  /// rho ln rho with 0 ln 0 = 0 below 1e-300.
  double shannon_density(double a) const;

  /// Positive abscissae inside the truncation radius where rho vanishes:
  /// Hermite nodes and, if present, the zero of the weight. Ascending.
  std::vector<double> positive_nodes() const;
  /// Positive zero of the weight, if it has one anywhere on the half line.
  std::optional<double> weight_zero() const;

 private:
  friend WaveState make_state(const EnergyLevel&, double, Space, Normalization,
                              const QuadratureSpec&);
  WaveState() = default;

  Space space_ = Space::coordinate;
  EnergyLevel level_;
  double gamma_ = 0.0;
  double norm_const_sq_ = 0.0;
  double denominator_ = 0.0;
  double scale_ = 1.0;
  double curvature_ = 0.0;
  double radius_ = 0.0;
  double norm_integral_ = 0.0;
  ValidityFlags validity_;
};

/// Throws NonNormalizable (strict mode) when the denominator is <= 0.
WaveState make_state(const EnergyLevel& level, double gamma, Space space,
                     Normalization normalization = Normalization::strict,
                     const QuadratureSpec& spec = {});

/// Truncation radius sqrt((2n+1)/l) + 12/sqrt(l), l = lambda (coordinate) or 1/lambda (momentum).
double truncation_radius(int n, double lambda, Space space);

double rho(const WaveState& state, double a);

struct DensityCurve {
  Space space = Space::coordinate;
  DensityKind kind = DensityKind::rho;
  std::vector<double> grid;
  std::vector<double> values;
};

/// `count` equally spaced points from lo to hi inclusive; count >= 2, lo < hi.
std::vector<double> make_grid(double lo, double hi, int count);

DensityCurve rho_curve(const WaveState& state, const std::vector<double>& grid);
/// Throws InvalidDensity unless validity().weight_positive.
DensityCurve fisher_density_curve(const WaveState& state, const std::vector<double>& grid);
/// Throws InvalidDensity unless validity().weight_positive.
DensityCurve shannon_density_curve(const WaveState& state, const std::vector<double>& grid);
DensityCurve density_curve(const WaveState& state, DensityKind kind,
                           const std::vector<double>& grid);

}  // namespace kgo
