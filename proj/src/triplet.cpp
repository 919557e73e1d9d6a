#include "levy2d/triplet.hpp"

#include <cmath>
#include <string>

#include "levy2d/errors.hpp"
#include "levy2d/quadrature.hpp"

namespace levy2d {

double LevyTriplet2D::c(const State& x) const {
  if (!diffusion) return 0.0;
  const double v = diffusion(x);
  if (!(v >= 0.0)) throw ModelError("negative or non-finite diffusion sample");
  return v;
}

void validate_triplet(const LevyTriplet2D& t, const std::vector<State>& states) {
  if (t.finite_part) {
    for (const auto& r : t.finite_part->rings) {
      if (!(r.radius > 0.0) || !(r.mass >= 0.0))
        throw ModelError("ring needs a positive radius and nonnegative mass");
      if (r.radius > t.finite_part->enclosing_radius)
        throw ModelError("ring radius exceeds the declared enclosing radius");
    }
  }
  const auto& n = t.jump_density;
  if (n.support_floor < 0.0) throw ModelError("negative support floor");
  for (const auto& x : states) {
    (void)t.c(x);
    if (n.is_zero()) continue;
    auto small = [&](double u) { return u * u * u * n(x, u); };
    auto large = [&](double u) { return u * n(x, u); };
    try {
      const double start = std::max(n.support_floor, 1.0);
      (void)integrate_to_infinity(large, start, 1e-6, &n.interior_edges);
      if (n.support_floor < 1.0) {
        if (n.support_floor > 0.0)
          (void)integrate(small, n.support_floor, 1.0, 1e-6, 0.0,
                          &n.interior_edges);
        else
          (void)integrate_from_zero(small, 1.0, 1e-6, &n.interior_edges);
      }
    } catch (const QuadratureError& e) {
      throw ModelError(std::string("jump density is not an admissible measure: ") + e.what());
    }
  }
}

}  // namespace levy2d
