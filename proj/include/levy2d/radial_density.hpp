#pragma once

#include <Eigen/Core>
#include <functional>
#include <optional>
#include <vector>

namespace levy2d {

using State = Eigen::Vector2d;

// Declared asymptotic shape of the density at infinity:
// n(x, u) behaves like (ln u)^log_exponent * u^power, with power <= -2.
// Purely advisory; engines that can exploit it check it is present.
struct DeclaredTail {
  double power = 0.0;
  double log_exponent = 0.0;
};

// Radial jump density slice u -> n(x, u). The measure it induces on the
// plane is n(x, |y|) dy, so one-dimensional integrals against it carry a
// 2*pi*u Jacobian.
struct RadialDensity {
  std::function<double(const State&, double)> density;
  double support_floor = 0.0;
  std::optional<double> decreasing_beyond;
  std::optional<DeclaredTail> declared_tail;
  // Radii where the density jumps (support tops, piecewise seams). Declared
  // jumps become quadrature panel boundaries, where interior-node rules are
  // safe; an undeclared jump can hide in the node gap next to a panel edge
  // and silently degrade tail integrals.
  std::vector<double> interior_edges;

  bool is_zero() const { return !density; }

  // floor-clamped, sign-checked sample
  double operator()(const State& x, double u) const;
};

}  // namespace levy2d
