#pragma once

#include <functional>
#include <vector>

namespace levy2d {

enum class End { Origin, Infinity };

// Geometric abscissa grid of `points` samples of [lo, hi]. Origin grids
// need hi <= 0.1 and Infinity grids lo >= 10 so |ln rho| stays >= ln 10
// and the log-log coordinate below is well defined.
struct GridSpec {
  double lo = 0.0;
  double hi = 0.0;
  int points = 0;
};

GridSpec default_origin_grid();    // [1e-12, 1e-3], 96 points
GridSpec default_infinity_grid();  // [1e3, 1e12], 96 points

std::vector<double> expand_grid(const GridSpec& spec);

// Power-log model g(rho) ~ C * rho^a * L(rho)^b with L = ln(1/rho) toward
// the origin and L = ln rho toward infinity. Fitted on the even grid
// points; residual is the worst relative deviation on the odd, held-out
// ones, so a model violation cannot hide inside the fitting set.
struct AsymptoticFit {
  End end = End::Origin;
  double exponent_a = 0.0;
  double log_exponent_b = 0.0;
  double scale_C = 0.0;
  double residual = 0.0;
  bool unreliable = false;
  std::vector<double> grid;
};

AsymptoticFit fit_asymptote(const std::function<double(double)>& profile,
                            End end, const GridSpec& grid,
                            double residual_ceiling = 0.05);

// Same fit on precomputed samples; `abscissae` must satisfy the GridSpec
// constraints (>= 16 increasing points, >= 3 decades, away from rho = 1).
AsymptoticFit fit_asymptote(const std::vector<double>& abscissae,
                            const std::vector<double>& values, End end,
                            double residual_ceiling = 0.05);

enum class IntegralForm { OriginWeighted, InfinityReciprocal };
enum class IntegralDecision { Divergent, Convergent, Inconclusive };

// Divergence class of int_0 rho drho / g (OriginWeighted, Origin fit) or
// int^inf drho / g (InfinityReciprocal, Infinity fit) for the fitted model.
// Exact rule: the origin integral diverges iff a > 2, or a = 2 and b <= 1;
// the infinity integral converges iff a > 1, or a = 1 and b > 1. Within
// eps_a of the critical power the call falls to b, whose b <= 1 side is
// accepted up to b_divergent_side and whose b > 1 side starts at
// b_convergent_side; between the two the result is Inconclusive. The
// asymmetric margins keep profiles sitting exactly on b = 1 (where the
// integral still diverges) decidable under fit noise. Unreliable fits are
// always Inconclusive.
IntegralDecision decide_integral(const AsymptoticFit& fit, IntegralForm form,
                                 double eps_a = 0.02,
                                 double b_divergent_side = 1.15,
                                 double b_convergent_side = 1.5);

const char* to_string(IntegralDecision d);

}  // namespace levy2d
