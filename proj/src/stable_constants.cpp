#include "levy2d/stable_constants.hpp"

#include <cmath>

#include "levy2d/errors.hpp"

namespace levy2d {

// b(alpha) = Gamma(1 + alpha/2) / (sqrt(pi) * Gamma((alpha+1)/2))
double stable_density_coefficient(double alpha) {
  if (!(alpha > 0.0 && alpha < 2.0))
    throw ModelError("stable index must lie in (0, 2)");
  return std::tgamma(1.0 + 0.5 * alpha) /
         (std::sqrt(M_PI) * std::tgamma(0.5 * (alpha + 1.0)));
}

// gamma(alpha, beta) = beta * sqrt(pi) * Gamma(1 - alpha/2)
//                      / (alpha * 2^(alpha-1) * Gamma((alpha+1)/2))
double stable_symbol_scale(double alpha, double beta) {
  if (!(alpha > 0.0 && alpha < 2.0))
    throw ModelError("stable index must lie in (0, 2)");
  return beta * std::sqrt(M_PI) * std::tgamma(1.0 - 0.5 * alpha) /
         (alpha * std::pow(2.0, alpha - 1.0) * std::tgamma(0.5 * (alpha + 1.0)));
}

}  // namespace levy2d
