#pragma once

namespace levy2d {

// Normalization linking the radial power density to its symbol: with
// n(u) = beta * stable_density_coefficient(alpha) * u^(-2-alpha), 0<alpha<2,
// the jump part of the radial symbol is exactly
// stable_symbol_scale(alpha, beta) * rho^alpha.
double stable_density_coefficient(double alpha);
double stable_symbol_scale(double alpha, double beta);

}  // namespace levy2d
