#pragma once

#include "levy2d/triplet.hpp"

namespace levy2d {

// Value of the radial characteristic exponent at frequency radius rho:
//   q(x, rho) = c(x) rho^2 / 2
//             + 2*pi * int_0^inf (1 - J0(rho u)) u n(x, u) du
//             + sum over rings of mass * (1 - J0(rho * radius)).
// Vanishes at rho = 0 and is even in rho. Quadrature trouble surfaces as
// QuadratureError carrying the partial sum.
double eval_symbol(const LevyTriplet2D& t, const State& x, double rho,
                   double rel_tol = 1e-9);

}  // namespace levy2d
