#pragma once

namespace levy2d {

// Bessel function of the first kind, order zero. Absolute error below 1e-10
// on [0, 1e8]; even argument symmetry is applied for x < 0.
double bessel_j0(double x);

// 1 - J0(x) evaluated without cancellation near x = 0, where the difference
// is ~ x^2/4. Relative accuracy is kept for small x; for large x it falls
// back to the direct difference, which is already well conditioned there.
double one_minus_j0(double x);

// Approximation to the k-th positive zero of J0 (k >= 1). The first eight
// are tabulated, the rest come from the McMahon expansion. Used to place
// panel boundaries for oscillatory quadrature, so a few ulps of slack in
// the later zeros are harmless.
double bessel_j0_zero(long k);

}  // namespace levy2d
