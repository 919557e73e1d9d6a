#pragma once

#include <functional>
#include <vector>

namespace levy2d {

using Integrand = std::function<double(double)>;

struct QuadResult {
  double value = 0.0;
  double abs_error = 0.0;
  long evaluations = 0;
};

// Known discontinuity abscissae of the integrand. Every engine cuts its
// panels at these points: interior-node rules never sample panel endpoints,
// so a jump sitting exactly on a boundary costs nothing, while a jump hiding
// in the node gap just inside a boundary would go unseen.
using Cuts = std::vector<double>;

// Adaptive Gauss-Kronrod 7/15 on the finite interval [a, b]. Nodes are
// interior, so integrable endpoint singularities are tolerated. Throws
// QuadratureError (carrying the partial sum) when the panel budget runs out
// or the integrand produces a non-finite sample.
QuadResult integrate(const Integrand& f, double a, double b,
                     double rel_tol = 1e-10, double abs_tol = 0.0,
                     const Cuts* cuts = nullptr);

// Integral over [a, infinity), a > 0, for integrands whose tail contributions
// contract geometrically across doubling panels. The remainder beyond the last
// panel is extrapolated from the observed contraction ratio, which makes pure
// power tails essentially exact. A tail that stops contracting raises
// QuadratureError with the partial sum; callers treat that as divergence
// evidence, not as a crash.
QuadResult integrate_to_infinity(const Integrand& f, double a,
                                 double rel_tol = 1e-9,
                                 const Cuts* cuts = nullptr);

// Integral over (0, b] allowing an integrable power singularity at zero.
// Same panel/extrapolation scheme as integrate_to_infinity, run toward 0.
QuadResult integrate_from_zero(const Integrand& f, double b,
                               double rel_tol = 1e-9,
                               const Cuts* cuts = nullptr);

// Integral over [a, infinity) of an integrand oscillating like J0(rho*u)
// times a slowly varying amplitude. Panels are cut at the scaled zeros of J0
// and the alternating partial-sum sequence is collapsed by repeated
// averaging.
QuadResult integrate_bessel_tail(const Integrand& f, double a, double rho,
                                 double rel_tol = 1e-9,
                                 const Cuts* cuts = nullptr);

}  // namespace levy2d
