#include "levy2d/symbol.hpp"

#include <algorithm>
#include <cmath>

#include "levy2d/bessel.hpp"
#include "levy2d/quadrature.hpp"

namespace levy2d {

double eval_symbol(const LevyTriplet2D& t, const State& x, double rho,
                   double rel_tol) {
  rho = std::fabs(rho);
  if (rho == 0.0) return 0.0;

  double q = 0.5 * t.c(x) * rho * rho;
  if (t.finite_part)
    for (const auto& r : t.finite_part->rings)
      q += r.mass * one_minus_j0(rho * r.radius);

  const auto& n = t.jump_density;
  if (n.is_zero()) return q;

  const double tol = rel_tol / 3.0;
  auto w = [&](double u) { return 2.0 * M_PI * u * n(x, u); };
  auto f_omj = [&](double u) { return one_minus_j0(rho * u) * w(u); };

  // Up to the eighth Bessel zero the factor 1 - J0 is integrated directly,
  // with panel cuts at the zeros. Beyond it the integral splits into the
  // principal tail of the density and an oscillatory correction.
  const double lo = n.support_floor;
  const Cuts* cuts = &n.interior_edges;
  const double z8 = bessel_j0_zero(8) / rho;
  double jump = 0.0;
  if (lo < z8) {
    const double z1 = bessel_j0_zero(1) / rho;
    if (lo < z1)
      jump += (lo > 0.0 ? integrate(f_omj, lo, z1, tol, 0.0, cuts).value
                        : integrate_from_zero(f_omj, z1, tol, cuts).value);
    for (int k = 1; k < 8; ++k) {
      const double a = std::max(lo, bessel_j0_zero(k) / rho);
      const double b = bessel_j0_zero(k + 1) / rho;
      if (a < b) jump += integrate(f_omj, a, b, tol, 0.0, cuts).value;
    }
  }
  const double tail_start = std::max(lo, z8);
  jump += integrate_to_infinity(w, tail_start, tol, cuts).value;
  jump -= integrate_bessel_tail(
              [&](double u) { return bessel_j0(rho * u) * w(u); }, tail_start,
              rho, tol, cuts)
              .value;
  return q + jump;
}

}  // namespace levy2d
