#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "levy2d/asymptotic_fit.hpp"
#include "levy2d/tail_functionals.hpp"
#include "levy2d/triplet.hpp"

namespace levy2d {

enum class StateMode { Constant, Parametric, Grid };
enum class EnvelopeSelector { SupOverX, InfOverX };

const char* to_string(EnvelopeSelector sel);

// Scalar coefficient field x -> value with its declared range.
struct ParamField {
  std::function<double(const State&)> value;
  double lower = 0.0;
  double upper = 0.0;
};

// A state-indexed family of radial triplets. Envelopes over x are taken
// as extrema over state_samples; each constructor arranges the samples to
// realize the coefficient ranges exactly (one state for constant
// families, a parameter-spanning arc for parametric ones, a raster for
// grid mode), so sample extrema equal the declared envelopes for
// quantities monotone in the coefficients.
struct ProcessFamily {
  std::string kind;  // brownian | stable | stable_like | radial_density |
                     // regvar | subordinated
  LevyTriplet2D triplet;
  StateMode state_mode = StateMode::Constant;
  std::optional<ParamField> alpha;       // order field
  std::optional<ParamField> beta;        // density scale field
  std::optional<ParamField> log_order;   // log-correction exponent field
  // closed-form radial symbol (x, rho) -> q(x, rho); checked against
  // triplet quadrature by validate_family unless symbol_only
  std::function<double(const State&, double)> symbol_override;
  bool symbol_only = false;  // no usable triplet; tail criteria unavailable
  std::vector<State> state_samples;
  std::string envelope_note;  // how the samples realize the envelopes
};

ProcessFamily make_brownian(double c);
ProcessFamily make_stable(double alpha, double beta);
// coefficients modulated along alpha(x) = lo + (hi - lo) sin^2|x|
ProcessFamily make_stable_like(double alpha_lo, double alpha_hi,
                               double beta_lo, double beta_hi);
// n(u) = scale * u^power * ln(u)^log_exp on u >= floor, floor > 1
ProcessFamily make_regvar(double power, double log_exp, double scale = 1.0,
                          double floor = 2.718281828459045);
ProcessFamily make_radial_family(RadialDensity density, double c = 0.0);
// symbol-only variable-order family q(x, rho) = (c rho^2 / 2)^alpha(x)
ProcessFamily make_subordinated(double alpha_lo, double alpha_hi,
                                double c = 1.0);
// switch the family's envelope strategy to a raster over the box [lo, hi]
ProcessFamily with_grid(ProcessFamily f, const State& lo, const State& hi,
                        int per_side);

// Checks sample availability, declared coefficient ranges, triplet
// integrability over the samples, and agreement of symbol_override with
// triplet quadrature on a small verification grid.
void validate_family(const ProcessFamily& f, double override_rel_tol = 1e-4);

// sup_x or inf_x of q(x, (rho, 0)) over the family's state samples
double radial_symbol_profile(const ProcessFamily& f, EnvelopeSelector sel,
                             double rho);

// sup_x or inf_x of int_0^rho u nu(x, B_u^c) du (via the ball-tail and
// second-moment identity)
double cumulative_tail_integral(const ProcessFamily& f, EnvelopeSelector sel,
                                double rho);

// Pointwise envelopes along an ascending grid, one tail-profile pass per
// state: ball tail, truncated second moment, and the cumulative tail
// integral assembled per state before taking the extremum.
struct EnvelopeTailProfiles {
  std::vector<double> ball;
  std::vector<double> second_moment;
  std::vector<double> cumulative;
};
EnvelopeTailProfiles envelope_tail_profiles(const ProcessFamily& f,
                                            EnvelopeSelector sel,
                                            const std::vector<double>& grid);

enum class SecondMomentClass { Finite, Infinite, Indeterminate };

const char* to_string(SecondMomentClass c);

// Growth class of the enveloped truncated second moment: a fitted power
// exponent above 0.05 or, at zero power, a log exponent >= 0.5 counts as
// Infinite; flat fits (|a| <= 0.05, b <= 0.15) as Finite; anything else,
// unreliable fits included, as Indeterminate.
struct SecondMomentReport {
  SecondMomentClass value = SecondMomentClass::Indeterminate;
  AsymptoticFit fit;
};
SecondMomentReport second_moment_classifier(const ProcessFamily& f,
                                            EnvelopeSelector sel);

// Monotone-tail certificate: the radial density is nonincreasing beyond
// u0 (and any finite part sits inside u0), either by declaration or by
// geometric-grid sampling over the given states. A certificate at u0
// upgrades to every u' > u0, so gates needing a larger radius may raise
// it freely.
struct UnimodalityCertificate {
  bool holds = false;
  double u0 = 0.0;
  std::string source;  // "trivial", "declared" or "sampled"
};
UnimodalityCertificate quasi_unimodality_certificate(
    const LevyTriplet2D& t, const std::vector<State>& states = {});

}  // namespace levy2d
