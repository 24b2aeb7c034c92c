#include "kgo/errors.hpp"

#include <fmt/format.h>

namespace kgo {

NoPhysicalRoot::NoPhysicalRoot(double gamma, int n, const std::string& why)
    : Error(fmt::format("no physical root for gamma = {}, n = {}: {}", gamma, n, why)),
      gamma_(gamma),
      n_(n) {}

NonNormalizable::NonNormalizable(const std::string& space, double denominator)
    : Error(fmt::format("{} state is not normalizable: closed-form denominator = {}", space,
                        denominator)),
      denominator_(denominator) {}

NoConvergence::NoConvergence(double estimate, double error_bound)
    : Error(fmt::format("adaptive quadrature did not converge (estimate {}, error bound {})",
                        estimate, error_bound)),
      estimate_(estimate),
      error_bound_(error_bound) {}

}  // namespace kgo
