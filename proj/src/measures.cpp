#include "kgo/measures.hpp"

#include "kgo/errors.hpp"
#include "kgo/hermite.hpp"

#include <cmath>
#include <numbers>
#include <string>
#include <utility>

namespace kgo {
namespace {

void require_positive_density(const WaveState& state, std::string_view what) {
  if (!state.validity().norm_positive || !state.validity().weight_positive)
    throw InvalidDensity(std::string(what) + " is undefined for the " +
                         std::string(to_string(state.space())) + " state with n = " +
                         std::to_string(state.n()) + ", gamma = " + std::to_string(state.gamma()) +
                         ": the density is not positive on the truncation domain");
}

// phi_n(xi)^2 exp(xi^2) = H_n(xi)^2 / (2^n n! sqrt(pi)), evaluated without overflow.
double normalized_hermite_sq(int n, double xi) {
  const HermitePair h = hermite_pair(n, xi);
  if (h.value == 0.0 && !std::isfinite(h.log_abs_value)) return 0.0;
  return std::exp(2.0 * h.log_abs_value + xi * xi);
}

std::string flag(Space space, std::string_view code) {
  return std::string(to_string(space)) + ":" + std::string(code);
}

}  // namespace

double bbm_bound() { return 1.0 + std::log(std::numbers::pi); }

InequalityRecord make_inequality(std::string name, Relation relation, double lhs, double rhs) {
  InequalityRecord rec;
  rec.name = std::move(name);
  rec.relation = relation;
  rec.lhs = lhs;
  rec.rhs = rhs;
  rec.margin = relation == Relation::greater_equal ? lhs - rhs : rhs - lhs;
  rec.satisfied = rec.margin >= -kInequalitySlack;
  return rec;
}

double moment2(const WaveState& state, const QuadratureSpec& spec, Strictness strictness) {
  if (strictness == Strictness::strict) require_positive_density(state, "<a^2>");
  const std::vector<double> cuts = state.positive_nodes();
  return integrate_even([&state](double a) { return a * a * state.density(a); },
                        state.truncation_radius(), spec, cuts)
      .value;
}

double moment2_closed_form(const WaveState& state) {
  const double n = state.n();
  const double s2 = state.scale() * state.scale();
  const double xi2 = n + 0.5;
  const double xi4 = 0.75 * (2.0 * n * n + 2.0 * n + 1.0);
  return (state.level().E * xi2 / s2 + state.weight_curvature() * xi4 / (s2 * s2)) /
         state.denominator();
}

double fisher_direct(const WaveState& state, const QuadratureSpec& spec) {
  require_positive_density(state, "Fisher information");
  const std::vector<double> cuts = state.positive_nodes();
  return integrate_even([&state](double a) { return state.fisher_density(a); },
                        state.truncation_radius(), spec, cuts)
      .value;
}

double shannon(const WaveState& state, const QuadratureSpec& spec) {
  require_positive_density(state, "Shannon entropy");
  const std::vector<double> cuts = state.positive_nodes();
  return -integrate_even([&state](double a) { return state.shannon_density(a); },
                         state.truncation_radius(), spec, cuts)
              .value;
}

PaperFisher fisher_paper(const WaveState& state, const QuadratureSpec& spec) {
  require_positive_density(state, "closed-form Fisher information");
  const int n = state.n();
  const double nd = n;
  const double E = state.level().E;
  const double lam = state.level().lambda;
  const double g = state.gamma();
  const double D = state.denominator();
  const double s = state.scale();
  const bool coordinate = state.space() == Space::coordinate;
  // Gaussian exponent of C^2 H_n^2 exp(...) in the closed-form integrands.
  const double gauss_exponent = coordinate ? lam : 1.0 / lam;
  const int points = n + 3;

  // C^2 * Integral of coef * a^k H_n(s a)^2 exp(-gauss_exponent a^2) da.
  auto moment_term = [&](double coef, int k) {
    auto poly = [&](double a) {
      return coef * std::pow(a, k) * (s / D) * normalized_hermite_sq(n, s * a);
    };
    return gauss_hermite(poly, gauss_exponent, points);
  };

  const double shape = ((2.0 * nd + 1.0) * (2.0 * nd + 1.0) + 2.0) / 4.0;
  PaperFisher out;
  double vi_integrand_scale;
  if (coordinate) {
    out.terms[0] = moment_term(16.0 * nd * nd * E, 0);
    out.terms[1] = moment_term(-(16.0 * nd * lam * E + 8.0 * nd * g), 1);
    out.terms[2] = moment_term(4.0 * lam * lam * E - 8.0 * nd * nd * g + 4.0 * g * lam, 2);
    out.terms[3] = moment_term(8.0 * nd * lam * g, 3);
    out.term_v_from_integrand = moment_term(-2.0 * lam * lam * g, 4);
    out.terms[4] = -2.0 * g * shape / D;
    vi_integrand_scale = 0.0;
  } else {
    const double l2 = lam * lam, l4 = l2 * l2;
    out.terms[0] = moment_term(16.0 * nd * nd * E, 0);
    out.terms[1] = moment_term(2.0 * g / l4 - 4.0 * nd * E / lam, 1);
    out.terms[2] = moment_term(4.0 * E / l2 + 8.0 * nd * nd * g / l4, 2);
    out.terms[3] = -moment_term(4.0 * nd * g / (2.0 * l4 * lam), 3);
    out.term_v_from_integrand = moment_term(4.0 * g / (2.0 * l4 * l2), 4);
    out.terms[4] = (2.0 * g / l4) * shape / D;
    vi_integrand_scale = l4;
  }

  // Term VI: the rational part, integrated numerically; omega_E is taken as lambda.
  auto vi = [&](double a) {
    const double phi = hermite_weighted(n, s * a);
    const double base = (s / D) * phi * phi;
    if (coordinate) return base * g * g * a * a / (E - 0.5 * g * a * a);
    const double l4 = vi_integrand_scale;
    return base * 2.0 * g * g * a * a / (l4 * (2.0 * E * l4 + g * a * a));
  };
  const std::vector<double> cuts = state.positive_nodes();
  out.terms[5] = integrate_even(vi, state.truncation_radius(), spec, cuts).value;

  out.value = 0.0;
  for (double t : out.terms) out.value += t;
  return out;
}

void assemble_derived(MeasureReport& r) {
  r.dx.reset();
  r.dp.reset();
  r.dxdp.reset();
  r.F_prod.reset();
  r.S_sum.reset();
  r.stam_x.reset();
  r.stam_p.reset();
  r.cramer_rao_x.reset();
  r.cramer_rao_p.reset();
  r.fisher_product.reset();
  r.bbm.reset();

  if (r.x2 && *r.x2 >= 0.0) r.dx = std::sqrt(*r.x2);
  if (r.p2 && *r.p2 >= 0.0) r.dp = std::sqrt(*r.p2);
  if (r.dx && r.dp) r.dxdp = *r.dx * *r.dp;
  if (r.Fx && r.Fp) r.F_prod = *r.Fx * *r.Fp;
  if (r.Sx && r.Sp) r.S_sum = *r.Sx + *r.Sp;

  if (r.Fx && r.p2) r.stam_x = make_inequality("stam_x", Relation::less_equal, *r.Fx, 4.0 * *r.p2);
  if (r.Fp && r.x2) r.stam_p = make_inequality("stam_p", Relation::less_equal, *r.Fp, 4.0 * *r.x2);
  if (r.Fx && r.x2)
    r.cramer_rao_x = make_inequality("cramer_rao_x", Relation::greater_equal, *r.Fx, 1.0 / *r.x2);
  if (r.Fp && r.p2)
    r.cramer_rao_p = make_inequality("cramer_rao_p", Relation::greater_equal, *r.Fp, 1.0 / *r.p2);
  if (r.F_prod)
    r.fisher_product = make_inequality("fisher_product", Relation::greater_equal, *r.F_prod, 4.0);
  if (r.S_sum) r.bbm = make_inequality("bbm", Relation::greater_equal, *r.S_sum, bbm_bound());
}

MeasureReport report(double gamma, int n, Branch branch, const QuadratureSpec& spec,
                     const ReportOptions& options) {
  const ModelConfig config{gamma, branch};
  const EnergyLevel level = energy_level(config, n);

  MeasureReport r;
  r.n = n;
  r.gamma = gamma;
  r.branch = branch;
  r.E = level.E;
  r.lambda = level.lambda;

  struct SpaceResult {
    std::optional<double> m2, F, S, F_paper;
  };
  auto evaluate = [&](Space space) {
    SpaceResult out;
    std::optional<WaveState> state;
    try {
      state = make_state(level, gamma, space, Normalization::strict, spec);
    } catch (const NonNormalizable&) {
      r.flags.push_back(flag(space, "non_normalizable"));
      if (options.forensic) {
        state = make_state(level, gamma, space, Normalization::forensic, spec);
        r.forensic = true;
        r.flags.push_back(flag(space, "forensic_moment"));
      }
    }
    if (!state) return out;
    out.m2 = moment2(*state, spec);
    if (!state->validity().norm_positive) return out;
    if (!state->validity().weight_positive) {
      r.flags.push_back(flag(space, "weight_sign_change"));
      return out;
    }
    try {
      out.F = fisher_direct(*state, spec);
      out.S = shannon(*state, spec);
    } catch (const NoConvergence&) {
      r.flags.push_back(flag(space, "no_convergence"));
    }
    if (options.paper_mode) {
      try {
        out.F_paper = fisher_paper(*state, spec).value;
      } catch (const Error&) {
        r.flags.push_back(flag(space, "paper_fisher_unavailable"));
      }
      if (out.F && out.F_paper &&
          std::abs(*out.F_paper - *out.F) > options.paper_divergence_threshold * std::abs(*out.F))
        r.flags.push_back(flag(space, "paper_fisher_divergence"));
    }
    return out;
  };

  const SpaceResult x = evaluate(Space::coordinate);
  const SpaceResult p = evaluate(Space::momentum);

  r.x2 = x.m2;
  r.p2 = p.m2;
  r.Fx = x.F;
  r.Fp = p.F;
  r.Fx_paper = x.F_paper;
  r.Fp_paper = p.F_paper;
  r.Sx = x.S;
  r.Sp = p.S;
  assemble_derived(r);
  return r;
}

}  // namespace kgo
