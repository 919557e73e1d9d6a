#pragma once

#include <string>
#include <vector>

#include "levy2d/process_family.hpp"
#include "levy2d/simulate.hpp"

namespace levy2d {

// Ball-return probabilities over the probe grid. Counts are integers
// aggregated over fixed path indices, so the estimate is bit-identical
// for any thread schedule.
struct OccupationEstimate {
  std::vector<double> times;
  std::vector<double> p_hat;
  std::vector<double> std_err;  // sqrt(p (1 - p) / path_count)
  int path_count = 0;
  double probe_radius = 0.0;
};

enum class EmpiricalVerdict { RecurrentConsistent, TransientConsistent, Borderline };

const char* to_string(EmpiricalVerdict v);

// Weighted log-log fit of p_hat against time over the tail window.
// kappa <= 1 corresponds to a divergent occupation integral, so the
// verdict bands sit around 1; planar diffusion lands exactly on the
// critical exponent and is reported Borderline by design.
struct ReturnExponentFit {
  double kappa = 0.0;
  double half_width = 0.0;  // 1.96 sigma of the fitted slope
  EmpiricalVerdict verdict = EmpiricalVerdict::Borderline;
  int used_probes = 0;
  std::string note;
};

// Worker count: LEVY2D_THREADS when set, hardware concurrency otherwise.
int thread_count();

// Fraction of paths inside the probe ball at each probe time. Constant
// families use exact increments between probes; parametric families with
// order and scale fields use the frozen-state scheme.
OccupationEstimate estimate_ball_probability(const ProcessFamily& f,
                                             const SimConfig& cfg);

// Usable probes have p_hat above 5/path_count (at least 5 expected hits)
// and at most 0.05 (inside the decay regime); at least 8 are required.
ReturnExponentFit fit_return_exponent(const OccupationEstimate& est,
                                      double band = 0.15);

}  // namespace levy2d
