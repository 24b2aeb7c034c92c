#pragma once

#include <string_view>
#include <vector>

namespace kgo {

enum class Branch { particle, antiparticle };

std::string_view to_string(Branch branch);
/// Throws std::invalid_argument for anything but "particle" / "antiparticle".
Branch parse_branch(std::string_view text);

/// One physical scenario: the energy coupling gamma and the sign branch.
struct ModelConfig {
  double gamma = 0.0;
  Branch branch = Branch::particle;
  double quartic_tol = 1e-12;

  /// gamma must be finite with |gamma| < 2; quartic_tol positive.
  void validate() const;
};

struct EnergyLevel {
  int n = 0;
  double E = 0.0;
  /// Effective oscillator width sqrt(1 + gamma E).
  double lambda = 1.0;
  /// |q(E)| over the sum of the magnitudes of the quartic's terms.
  double quartic_residual = 0.0;
  /// |E^2 - 1 - 2 n lambda| over max(1, |E d/dE(...)|).
  double condition_residual = 0.0;
};

/// E^4 - 2E^2 - 4n^2 gamma E + 1 - 4n^2.
double quartic(double gamma, int n, double E);

/// Unsquared quantization condition E^2 - 1 - 2n sqrt(1 + gamma E);
/// NaN when 1 + gamma E < 0.
double quantization_condition(double gamma, int n, double E);

/// All real roots of the quartic with multiplicity, Newton-polished, ascending.
std::vector<double> quartic_real_roots(double gamma, int n);

/// Picks the physical root for the configured branch, refined on the
/// unsquared condition. Throws NoPhysicalRoot if none survives.
EnergyLevel select_physical(const std::vector<double>& roots, const ModelConfig& config, int n);

/// Convenience: quartic_real_roots followed by select_physical.
EnergyLevel energy_level(const ModelConfig& config, int n);

/// Levels n = 0..n_max.
std::vector<EnergyLevel> spectrum(const ModelConfig& config, int n_max);

/// Saturation value 1/|gamma|; throws UnboundedSpectrum for gamma == 0.
double asymptote(double gamma);

}  // namespace kgo
