#pragma once

#include <Eigen/Core>
#include <functional>
#include <string>

#include "levy2d/classify.hpp"
#include "levy2d/process_family.hpp"

namespace levy2d {

// Proper rotation of the plane; the transpose is the inverse.
struct PlaneRotation {
  double angle = 0.0;
  Eigen::Matrix2d matrix() const;
};

// Pushforward of the process under y -> M y. Conformal maps (scaled
// rotations and reflections) keep the radial type and fill `triplet`:
// density s^-2 n(M^-1 x, u/s), diffusion s^2 c(M^-1 x), ring radii scaled
// by s. Every result carries the exact symbol evaluator
// q_M(x, xi) = q(M^-1 x, M^T xi); the cutoff drift correction vanishes
// because radial measures are symmetric.
struct LinearTransformResult {
  bool in_type = false;
  LevyTriplet2D triplet;  // meaningful only when in_type
  std::function<double(const State&, const Eigen::Vector2d&)> symbol;
  std::string note;
};
LinearTransformResult linear_transform(const LevyTriplet2D& t,
                                       const Eigen::Matrix2d& m);

enum class GateState { Holds, Fails, Unknown };
const char* to_string(GateState g);

enum class EquivalenceConclusion {
  RecurrenceEquivalent,
  FullyEquivalent,
  NotEstablished
};
const char* to_string(EquivalenceConclusion c);

// Second-moment distance between two families up to a rotation of the
// state space, and what it establishes. distance < infinity makes the
// families recurrence-equivalent; the diffusive lower-bound gate
// (liminf of inf_x q_A / rho^2 at the origin exceeding constant_c)
// upgrades that to full equivalence. Between two constant-coefficient
// families the gate holds automatically.
struct PerturbationReport {
  double distance = 0.0;
  double constant_c = 0.0;
  GateState diffusive_floor_gate = GateState::Unknown;
  EquivalenceConclusion conclusion = EquivalenceConclusion::NotEstablished;
  std::string note;
};
PerturbationReport perturbation_equivalent(const ProcessFamily& a,
                                           const ProcessFamily& b,
                                           const PlaneRotation& rotation);

enum class TailComparison { BallTail, HalfPlaneTail };

// Sampled check of tail_A(x, u) >= tail_B(x, u) for u beyond u0, over the
// union of both families' state samples. The grid is reported; a failure
// carries the first offending radius.
struct DominationResult {
  bool dominates = false;
  double witness_u = 0.0;  // set when the check fails
  double grid_lo = 0.0;
  double grid_hi = 0.0;
  int points_per_decade = 0;
  std::string note;
};
DominationResult tail_dominates(const ProcessFamily& a,
                                const ProcessFamily& b, double u0,
                                TailComparison mode);

// Verdict transfer along a tail domination: recurrence of the dominating
// family passes down to the dominated one; transience of the dominated
// family passes up to the dominating one, gated on the dominating
// family's monotone-tail certificate and second-moment growth. The
// transience direction insists on a tail-integral source verdict.
enum class TransferDirection { RecurrenceToDominated, TransienceToDominating };
Verdict transfer_classification(const Verdict& src,
                                const DominationResult& domination,
                                TransferDirection direction,
                                const ProcessFamily& dominating);

}  // namespace levy2d
