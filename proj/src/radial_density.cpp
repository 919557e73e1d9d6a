#include "levy2d/radial_density.hpp"

#include <cmath>

#include "levy2d/errors.hpp"

namespace levy2d {

double RadialDensity::operator()(const State& x, double u) const {
  if (!density || u <= 0.0 || u < support_floor) return 0.0;
  const double v = density(x, u);
  if (!(v >= 0.0))  // also rejects NaN
    throw ModelError("negative or non-finite jump density sample");
  return v;
}

}  // namespace levy2d
