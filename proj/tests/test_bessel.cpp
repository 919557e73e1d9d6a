#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "levy2d/bessel.hpp"

using namespace levy2d;

TEST_CASE("bessel_j0 against the standard library") {
  // dense sweep across the series/asymptotic switch and well beyond it
  double worst = 0.0;
  for (double x = 0.0; x <= 200.0; x += 0.0173) {
    const double ref = std::cyl_bessel_j(0.0, x);
    worst = std::max(worst, std::fabs(bessel_j0(x) - ref));
  }
  CHECK(worst < 1e-10);
}

TEST_CASE("bessel_j0 special values") {
  CHECK(bessel_j0(0.0) == 1.0);
  CHECK(bessel_j0(-3.0) == bessel_j0(3.0));
  // J0 at its first zero
  CHECK(std::fabs(bessel_j0(2.404825557695773)) < 1e-12);
}

TEST_CASE("one_minus_j0 keeps relative accuracy near zero") {
  for (double x : {1e-8, 1e-6, 1e-4, 1e-2}) {
    // four series terms carry far more accuracy than double at these x
    const double q = 0.25 * x * x;
    const double ref = q - q * q / 4.0 + q * q * q / 36.0 - q * q * q * q / 576.0;
    CHECK(one_minus_j0(x) == doctest::Approx(ref).epsilon(1e-12));
  }
  for (double x : {0.5, 0.99}) {
    CHECK(one_minus_j0(x) ==
          doctest::Approx(1.0 - std::cyl_bessel_j(0.0, x)).epsilon(1e-11));
  }
  CHECK(one_minus_j0(3.0) == doctest::Approx(1.0 - std::cyl_bessel_j(0.0, 3.0)).epsilon(1e-12));
  CHECK(one_minus_j0(0.0) == 0.0);
}

TEST_CASE("bessel_j0_zero brackets actual sign changes") {
  for (int k = 1; k <= 60; ++k) {
    const double z = bessel_j0_zero(k);
    CHECK(z > (k > 1 ? bessel_j0_zero(k - 1) : 0.0));
    // the true zero lies within a tight window around the estimate
    const double lo = std::cyl_bessel_j(0.0, z - 2e-3);
    const double hi = std::cyl_bessel_j(0.0, z + 2e-3);
    CHECK(lo * hi < 0.0);
  }
}
