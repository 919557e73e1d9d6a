#pragma once

#include <vector>

#include "levy2d/triplet.hpp"

namespace levy2d {

// Mass outside the open ball of radius u (u > 0):
// 2*pi * int_u^inf r n(x,r) dr plus rings with radius >= u.
double ball_tail(const LevyTriplet2D& t, const State& x, double u);

// Second moment inside the open ball of radius rho:
// 2*pi * int_0^rho r^3 n(x,r) dr plus radius^2 * mass over rings inside.
double truncated_second_moment(const LevyTriplet2D& t, const State& x,
                               double rho);

// Mass of a halfplane at distance u > 0 from the origin; by rotational
// symmetry the direction is irrelevant. Chord decomposition:
// 2 * int_u^inf r n(x,r) arccos(u/r) dr plus ring masses weighted by
// arccos(min(1, u/radius)) / pi.
double halfplane_tail(const LevyTriplet2D& t, const State& x, double u);

// Mass, outside the unit ball, of the periodic family of coordinate strips
// { y : 2k*rho + u <= y.e < 2(k+1)*rho - u, k >= 0 } for 0 < u < rho.
// Computed as a telescoping sum of restricted halfplane tails; the density
// part of the restricted tail is evaluated through a log-log interpolation
// table so the sum over thousands of strips stays cheap.
double strip_mass(const LevyTriplet2D& t, const State& x, double rho,
                  double u);

// H(x, rho) = rho^2/2 * ball_tail + 1/2 * truncated_second_moment.
// Equal to int_0^rho u * ball_tail(u) du for every rho.
double cumulative_tail(const LevyTriplet2D& t, const State& x, double rho);

// ball_tail and truncated_second_moment along an ascending grid, computed
// incrementally: one open-ended tail integral plus one piece per grid cell.
struct TailGridProfiles {
  std::vector<double> ball;
  std::vector<double> second_moment;
};
TailGridProfiles tail_profiles(const LevyTriplet2D& t, const State& x,
                               const std::vector<double>& grid);

}  // namespace levy2d
