#pragma once

#include <optional>
#include <vector>

#include "levy2d/radial_density.hpp"

namespace levy2d {

// uniform mass on a centered circle
struct Ring {
  double radius = 0.0;
  double mass = 0.0;
};

// discrete rotation-invariant jump component
struct FinitePart {
  double enclosing_radius = 0.0;  // every ring radius lies within this bound
  std::vector<Ring> rings;
};

// Rotation-invariant generating triplet in the plane: state-dependent
// diffusion coefficient c(x) >= 0, no drift, and a jump measure given by a
// radial density plus optional rings.
struct LevyTriplet2D {
  std::function<double(const State&)> diffusion;
  RadialDensity jump_density;
  std::optional<FinitePart> finite_part;

  // diffusion sample; zero when no diffusion callable is set
  double c(const State& x) const;
};

// Structural checks at the given states: nonnegative diffusion, ring sanity,
// and integrability of u^3 n near zero and u n at infinity. Throws ModelError
// with context when a requirement fails.
void validate_triplet(const LevyTriplet2D& t, const std::vector<State>& states);

}  // namespace levy2d
