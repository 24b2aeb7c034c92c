#pragma once

#include <vector>

namespace kgo {

/// Orthonormal Hermite function phi_n(xi) = H_n(xi) exp(-xi^2/2) / sqrt(2^n n! sqrt(pi)).
double hermite_weighted(int n, double xi);

/// phi_n and phi_{n-1} at one point (phi_{-1} = 0), plus ln|phi_n|.
///
/// The recurrence runs on phi_k exp(xi^2/2) with a tracked exponent, so
/// neither 2^n n! nor exp(-xi^2/2) is ever formed on its own.
struct HermitePair {
  double value = 0.0;
  double previous = 0.0;
  double log_abs_value = 0.0;
  /// phi_{n-1} / phi_n from the unscaled recurrence (finite where both underflow).
  double previous_over_value = 0.0;
};
HermitePair hermite_pair(int n, double xi);

/// d/dxi phi_n = sqrt(2n) phi_{n-1} - xi phi_n.
double hermite_weighted_derivative(int n, double xi);

/// Raw physicists' polynomial H_n(x); overflows for large n, used only in
/// closed-form audits.
double hermite_polynomial(int n, double x);

/// Positive zeros of H_n, ascending.
std::vector<double> hermite_positive_zeros(int n);

}  // namespace kgo
