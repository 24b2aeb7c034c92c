#pragma once

#include <stdexcept>
#include <string>

namespace kgo {

/// Base class for every domain failure raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// No real root of the quantization condition survives the physical filters.
class NoPhysicalRoot : public Error {
 public:
  NoPhysicalRoot(double gamma, int n, const std::string& why);
  double gamma() const noexcept { return gamma_; }
  int n() const noexcept { return n_; }

 private:
  double gamma_;
  int n_;
};

/// gamma == 0: the spectrum grows without bound, there is no asymptote.
class UnboundedSpectrum : public Error {
 public:
  UnboundedSpectrum() : Error("spectrum is unbounded for gamma = 0 (no saturation)") {}
};

/// The closed-form normalization denominator is not positive.
class NonNormalizable : public Error {
 public:
  NonNormalizable(const std::string& space, double denominator);
  double denominator() const noexcept { return denominator_; }

 private:
  double denominator_;
};

/// A logarithm of the density was requested where the energy weight changes sign.
class InvalidDensity : public Error {
 public:
  using Error::Error;
};

/// Adaptive quadrature exhausted its refinement budget.
class NoConvergence : public Error {
 public:
  NoConvergence(double estimate, double error_bound);
  double estimate() const noexcept { return estimate_; }
  double error_bound() const noexcept { return error_bound_; }

 private:
  double estimate_;
  double error_bound_;
};

}  // namespace kgo
