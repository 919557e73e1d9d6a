#pragma once

#include <cstdint>
#include <vector>

#include "levy2d/process_family.hpp"
#include "levy2d/rng.hpp"
#include "levy2d/triplet.hpp"

namespace levy2d {

// Sampling scheme: jumps larger than small_jump_cutoff arrive as compound
// Poisson streams; smaller ones fold into the Gaussian part, which gets
// per-coordinate variance (c + half the truncated second moment) per unit
// time. Radial symmetry leaves no drift and no truncation compensator.
struct SimConfig {
  double horizon = 0.0;
  double step = 0.0;  // Euler step; used only by the frozen-state scheme
  double small_jump_cutoff = 0.25;
  int path_count = 0;
  std::uint64_t seed = 0;
  double probe_radius = 1.0;
  std::vector<double> probe_times;  // ascending, inside (0, horizon]
};

// Geometric probe grid from t_lo to t_hi; horizon = t_hi, step = t_lo/100.
SimConfig make_sim_config(double t_lo, double t_hi, int probe_count,
                          int path_count, std::uint64_t seed,
                          double probe_radius = 1.0,
                          double small_jump_cutoff = 0.25);

// state_dependent demands a positive Euler step at most min probe / 10
void validate_sim_config(const SimConfig& cfg, bool state_dependent);

// Frozen sampler for one radial measure: total jump rate beyond the
// cutoff, an inverse-tail table for the continuous radius law, one Poisson
// component per atom radius, and the folded Gaussian variance rate.
struct JumpMixture {
  double rate = 0.0;              // nu(B_cutoff^c), atoms included
  double continuous_rate = 0.0;   // density part alone
  double gaussian_variance = 0.0; // per coordinate, per unit time
  double cutoff = 0.0;
  std::vector<double> radii;      // geometric abscissae from the cutoff
  std::vector<double> tails;      // continuous tail at radii, nonincreasing
  struct Atom {
    double radius = 0.0;
    double mass = 0.0;
  };
  std::vector<Atom> atoms;

  // v in (0,1); inverts the continuous tail with log-log interpolation,
  // exact on power-law cells
  double sample_radius(double v) const;
};

JumpMixture build_jump_mixture(const LevyTriplet2D& t, const State& x,
                               double cutoff);

// One exact increment of length dt appended to pos, draws taken from g in
// a fixed order (Gaussian, continuous jumps, atoms)
void advance_exact(PhiloxRng& g, const JumpMixture& mix, double dt,
                   State& pos);

// Positions at cfg.probe_times for the path with this index, starting at
// the origin. The triplet must not depend on the state.
std::vector<State> simulate_levy_path(const LevyTriplet2D& t,
                                      const SimConfig& cfg,
                                      std::uint64_t path_index);
// same, with the frozen sampler prebuilt so a caller can share it
std::vector<State> simulate_levy_path(const JumpMixture& mix,
                                      const SimConfig& cfg,
                                      std::uint64_t path_index);

// Euler freeze: each step of length cfg.step draws the increment from the
// stable law with order and scale frozen at the current state; the radius
// law inverts in closed form. Needs the family's alpha and beta fields.
std::vector<State> simulate_stable_like_path(const ProcessFamily& f,
                                             const SimConfig& cfg,
                                             std::uint64_t path_index);

}  // namespace levy2d
