#pragma once

#include "kgo/quadrature.hpp"
#include "kgo/spectrum.hpp"
#include "kgo/states.hpp"

#include <array>
#include <optional>
#include <string>
#include <vector>

namespace kgo {

/// 1 + ln(pi): the one-dimensional entropic (BBM) lower bound.
double bbm_bound();

enum class Relation { less_equal, greater_equal };

/// One checked inequality `lhs <relation> rhs`; margin > 0 means satisfied.
struct InequalityRecord {
  std::string name;
  Relation relation = Relation::greater_equal;
  double lhs = 0.0;
  double rhs = 0.0;
  double margin = 0.0;
  bool satisfied = false;
};

/// Margins down to -1e-9 still count as satisfied.
inline constexpr double kInequalitySlack = 1e-9;

InequalityRecord make_inequality(std::string name, Relation relation, double lhs, double rhs);

enum class Strictness { lenient, strict };

/// <a^2> by quadrature. Strict mode throws InvalidDensity when the weight changes sign.
double moment2(const WaveState& state, const QuadratureSpec& spec = {},
               Strictness strictness = Strictness::lenient);

/// <a^2> from oscillator moment identities:
/// (E <xi^2>/s^2 + c <xi^4>/s^4) / D with <xi^2> = n + 1/2, <xi^4> = 3(2n^2 + 2n + 1)/4.
double moment2_closed_form(const WaveState& state);

/// Integral of rho'^2/rho, split at the density nodes. Ground truth for F.
double fisher_direct(const WaveState& state, const QuadratureSpec& spec = {});

/// The closed-form Fisher parameter, terms I..VI.
///
/// Terms I-IV are Gauss-Hermite evaluations of the closed-form integrands; term V
/// is the evaluated form (its integrand, with omega_E = lambda, gives
/// a different n-dependence, kept in `term_v_from_integrand`); term VI is by
/// adaptive quadrature.
struct PaperFisher {
  double value = 0.0;
  std::array<double, 6> terms{};
  double term_v_from_integrand = 0.0;
};
PaperFisher fisher_paper(const WaveState& state, const QuadratureSpec& spec = {});

/// -Integral of rho ln rho with 0 ln 0 = 0.
double shannon(const WaveState& state, const QuadratureSpec& spec = {});

struct ReportOptions {
  /// Evaluate non-normalizable states with the closed-form constant (moments only).
  bool forensic = false;
  /// Attach the closed-form Fisher values when computable.
  bool paper_mode = true;
  /// Relative paper-vs-direct Fisher deviation that raises a flag.
  double paper_divergence_threshold = 0.05;
};

/// One row of the uncertainty table. Quantities that could not be computed
/// for a space (non-normalizable state, sign-changing weight) are empty.
struct MeasureReport {
  int n = 0;
  double gamma = 0.0;
  Branch branch = Branch::particle;
  double E = 0.0;
  double lambda = 1.0;
  std::optional<double> x2, p2, dx, dp, dxdp;
  std::optional<double> Fx, Fp, Fx_paper, Fp_paper;
  std::optional<double> Sx, Sp, S_sum, F_prod;
  std::optional<InequalityRecord> stam_x, stam_p, cramer_rao_x, cramer_rao_p, fisher_product,
      bbm;
  /// True when any value came from a non-normalizable state.
  bool forensic = false;
  std::vector<std::string> flags;
};

/// Fills dx, dp, dxdp, F_prod, S_sum and the six inequality records from the
/// primary quantities already present in the report.
void assemble_derived(MeasureReport& report);

/// Builds both states for (gamma, n, branch) and computes every measure.
/// Throws NoPhysicalRoot when the level does not exist.
MeasureReport report(double gamma, int n, Branch branch, const QuadratureSpec& spec = {},
                     const ReportOptions& options = {});

}  // namespace kgo
