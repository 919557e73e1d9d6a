#include "levy2d/bessel.hpp"

#include <cmath>
#include <cstdlib>

namespace levy2d {
namespace {

constexpr double kSeriesCut = 14.0;

// ascending series sum_m (-1)^m (x^2/4)^m / (m!)^2, fine through x ~ 14
double j0_series(double x) {
  const double q = 0.25 * x * x;
  double term = 1.0;
  double sum = 1.0;
  for (int m = 1; m < 80; ++m) {
    term *= -q / (static_cast<double>(m) * static_cast<double>(m));
    sum += term;
    if (std::fabs(term) < 1e-18 * (std::fabs(sum) + 1e-300)) break;
  }
  return sum;
}

// Hankel expansion: J0(x) ~ sqrt(2/(pi x)) (P cos w - Q sin w), w = x - pi/4,
// P = 1 - a2/x^2 + a4/x^4 - ..., Q = -a1/x + a3/x^3 - ...,
// a_m = prod_{j<=m} (2j-1)^2 / (8j). Truncated at the smallest term; for
// x > 14 that leaves an error well under 1e-11.
double j0_asymptotic(double x) {
  double a = 1.0;
  double xpow = 1.0;
  double P = 1.0;
  double Q = 0.0;
  double prev = 1.0;
  int sp = -1, sq = -1;
  for (int m = 1; m <= 24; ++m) {
    a *= (2.0 * m - 1.0) * (2.0 * m - 1.0) / (8.0 * m);
    xpow /= x;
    const double t = a * xpow;
    if (t > prev) break;  // asymptotic tail started growing
    if (m % 2 == 1) {
      Q += sq * t;
      sq = -sq;
    } else {
      P += sp * t;
      sp = -sp;
    }
    prev = t;
    if (t < 1e-17) break;
  }
  const double w = x - 0.25 * M_PI;
  return std::sqrt(2.0 / (M_PI * x)) * (P * std::cos(w) - Q * std::sin(w));
}

}  // namespace

double bessel_j0(double x) {
  x = std::fabs(x);
  return x <= kSeriesCut ? j0_series(x) : j0_asymptotic(x);
}

double one_minus_j0(double x) {
  x = std::fabs(x);
  if (x >= 1.0) return 1.0 - bessel_j0(x);
  const double q = 0.25 * x * x;
  // 1 - J0 = q - q^2/4 + q^3/36 - ... = -sum_{m>=1} (-q)^m / (m!)^2
  double term = 1.0;
  double sum = 0.0;
  for (int m = 1; m < 40; ++m) {
    term *= -q / (static_cast<double>(m) * static_cast<double>(m));
    sum -= term;
    if (std::fabs(term) < 1e-18 * (sum + 1e-300)) break;
  }
  return sum;
}

double bessel_j0_zero(long k) {
  static const double table[8] = {
      2.404825557695773,  5.520078110286311,  8.653727912911013,
      11.791534439014281, 14.930917708487787, 18.071063967910924,
      21.21163662987926,  24.352471530749302};
  if (k < 1) std::abort();
  if (k <= 8) return table[k - 1];
  const double b = (k - 0.25) * M_PI;
  const double b2 = b * b;
  return b + 1.0 / (8.0 * b) - 31.0 / (384.0 * b * b2) +
         3779.0 / (15360.0 * b * b2 * b2);
}

}  // namespace levy2d
