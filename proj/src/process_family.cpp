#include "levy2d/process_family.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "levy2d/errors.hpp"
#include "levy2d/stable_constants.hpp"
#include "levy2d/symbol.hpp"

namespace levy2d {

const char* to_string(EnvelopeSelector sel) {
  return sel == EnvelopeSelector::SupOverX ? "sup_over_x" : "inf_over_x";
}

const char* to_string(SecondMomentClass c) {
  switch (c) {
    case SecondMomentClass::Finite: return "finite";
    case SecondMomentClass::Infinite: return "infinite";
    default: return "indeterminate";
  }
}

namespace {

double fold_init(EnvelopeSelector sel) {
  return sel == EnvelopeSelector::SupOverX
             ? -std::numeric_limits<double>::infinity()
             : std::numeric_limits<double>::infinity();
}

double fold(EnvelopeSelector sel, double acc, double v) {
  return sel == EnvelopeSelector::SupOverX ? std::max(acc, v)
                                           : std::min(acc, v);
}

// sin^2|x| sweeps [0, 1]; these states hit the values k/32 exactly, so the
// modulated coefficients take a full uniform grid over their ranges,
// endpoints included.
std::vector<State> parameter_arc() {
  std::vector<State> s;
  s.reserve(33);
  for (int k = 0; k <= 32; ++k)
    s.emplace_back(std::asin(std::sqrt(k / 32.0)), 0.0);
  return s;
}

ParamField modulated(double lo, double hi) {
  return {[lo, hi](const State& x) {
            const double s = std::sin(x.norm());
            return lo + (hi - lo) * s * s;
          },
          lo, hi};
}

const std::vector<State>& samples_or_throw(const ProcessFamily& f) {
  if (f.state_samples.empty())
    throw ModelError(
        "family has no state samples realizing its envelopes; construct it "
        "through a family builder or attach a grid");
  return f.state_samples;
}

const char* kArcNote =
    "33 states (asin(sqrt(k/32)), 0), k = 0..32; the sin^2 modulation "
    "takes each coefficient grid value exactly, endpoints included";

}  // namespace

ProcessFamily make_brownian(double c) {
  if (!(c > 0.0)) throw ModelError("Brownian family needs c > 0");
  ProcessFamily f;
  f.kind = "brownian";
  f.triplet.diffusion = [c](const State&) { return c; };
  f.symbol_override = [c](const State&, double rho) {
    return 0.5 * c * rho * rho;
  };
  f.state_samples = {State::Zero()};
  f.envelope_note = "constant coefficients; envelopes coincide";
  return f;
}

ProcessFamily make_stable(double alpha, double beta) {
  if (!(alpha > 0.0 && alpha < 2.0))
    throw ModelError("stable family needs 0 < alpha < 2");
  if (!(beta > 0.0)) throw ModelError("stable family needs beta > 0");
  ProcessFamily f;
  f.kind = "stable";
  const double coeff = beta * stable_density_coefficient(alpha);
  f.triplet.jump_density.density = [coeff, alpha](const State&, double u) {
    return coeff * std::pow(u, -2.0 - alpha);
  };
  f.triplet.jump_density.decreasing_beyond = 0.0;
  f.triplet.jump_density.declared_tail = DeclaredTail{-2.0 - alpha, 0.0};
  const double scale = stable_symbol_scale(alpha, beta);
  f.symbol_override = [scale, alpha](const State&, double rho) {
    return scale * std::pow(rho, alpha);
  };
  f.alpha = ParamField{[alpha](const State&) { return alpha; }, alpha, alpha};
  f.beta = ParamField{[beta](const State&) { return beta; }, beta, beta};
  f.state_samples = {State::Zero()};
  f.envelope_note = "constant coefficients; envelopes coincide";
  return f;
}

ProcessFamily make_stable_like(double alpha_lo, double alpha_hi,
                               double beta_lo, double beta_hi) {
  if (!(alpha_lo > 0.0 && alpha_lo <= alpha_hi && alpha_hi < 2.0))
    throw ModelError("stable-like family needs 0 < alpha_lo <= alpha_hi < 2");
  if (!(beta_lo > 0.0 && beta_lo <= beta_hi))
    throw ModelError("stable-like family needs 0 < beta_lo <= beta_hi");
  ProcessFamily f;
  f.kind = "stable_like";
  f.state_mode = StateMode::Parametric;
  f.alpha = modulated(alpha_lo, alpha_hi);
  f.beta = modulated(beta_lo, beta_hi);
  const auto av = f.alpha->value;
  const auto bv = f.beta->value;
  f.triplet.jump_density.density = [av, bv](const State& x, double u) {
    const double a = av(x);
    return bv(x) * stable_density_coefficient(a) * std::pow(u, -2.0 - a);
  };
  f.triplet.jump_density.decreasing_beyond = 0.0;
  f.symbol_override = [av, bv](const State& x, double rho) {
    const double a = av(x);
    return stable_symbol_scale(a, bv(x)) * std::pow(rho, a);
  };
  f.state_samples = parameter_arc();
  f.envelope_note = kArcNote;
  return f;
}

ProcessFamily make_regvar(double power, double log_exp, double scale,
                          double floor) {
  if (!(power < 0.0))
    throw ModelError("regularly varying family needs a negative power");
  if (!(scale > 0.0)) throw ModelError("density scale must be positive");
  if (!(floor > 1.0))
    throw ModelError(
        "regularly varying family needs floor > 1 so the log factor is "
        "positive on the support");
  ProcessFamily f;
  f.kind = "regvar";
  f.triplet.jump_density.density = [scale, power, log_exp](const State&,
                                                           double u) {
    return scale * std::pow(u, power) * std::pow(std::log(u), log_exp);
  };
  f.triplet.jump_density.support_floor = floor;
  f.triplet.jump_density.declared_tail = DeclaredTail{power, log_exp};
  // turning point of u^power ln^log_exp u
  f.triplet.jump_density.decreasing_beyond =
      std::max(floor, std::exp(log_exp / -power));
  f.state_samples = {State::Zero()};
  f.envelope_note = "constant coefficients; envelopes coincide";
  return f;
}

ProcessFamily make_radial_family(RadialDensity density, double c) {
  ProcessFamily f;
  f.kind = "radial_density";
  f.triplet.jump_density = std::move(density);
  if (c < 0.0) throw ModelError("diffusion coefficient must be nonnegative");
  if (c > 0.0)
    f.triplet.diffusion = [c](const State&) { return c; };
  f.state_samples = {State::Zero()};
  f.envelope_note = "constant coefficients; envelopes coincide";
  return f;
}

ProcessFamily make_subordinated(double alpha_lo, double alpha_hi, double c) {
  if (!(alpha_lo > 0.0 && alpha_lo <= alpha_hi && alpha_hi <= 1.0))
    throw ModelError(
        "subordinated family needs order bounds inside (0, 1]");
  if (!(c > 0.0)) throw ModelError("subordinated family needs c > 0");
  ProcessFamily f;
  f.kind = "subordinated";
  f.state_mode = StateMode::Parametric;
  f.symbol_only = true;
  f.alpha = modulated(alpha_lo, alpha_hi);
  const auto av = f.alpha->value;
  f.symbol_override = [av, c](const State& x, double rho) {
    return std::pow(0.5 * c * rho * rho, av(x));
  };
  f.state_samples = parameter_arc();
  f.envelope_note = kArcNote;
  return f;
}

ProcessFamily with_grid(ProcessFamily f, const State& lo, const State& hi,
                        int per_side) {
  if (per_side < 2) throw ConfigError("grid mode needs per_side >= 2");
  if (!(hi(0) > lo(0)) || !(hi(1) > lo(1)))
    throw ConfigError("grid box must have positive extent");
  f.state_mode = StateMode::Grid;
  f.state_samples.clear();
  f.state_samples.reserve(static_cast<size_t>(per_side) * per_side);
  for (int i = 0; i < per_side; ++i)
    for (int j = 0; j < per_side; ++j) {
      const double s = static_cast<double>(i) / (per_side - 1);
      const double t = static_cast<double>(j) / (per_side - 1);
      f.state_samples.emplace_back(lo(0) + s * (hi(0) - lo(0)),
                                   lo(1) + t * (hi(1) - lo(1)));
    }
  f.envelope_note =
      "raster of " + std::to_string(per_side) + "x" +
      std::to_string(per_side) + " states over [" + std::to_string(lo(0)) +
      "," + std::to_string(hi(0)) + "]x[" + std::to_string(lo(1)) + "," +
      std::to_string(hi(1)) + "]";
  return f;
}

void validate_family(const ProcessFamily& f, double override_rel_tol) {
  const auto& samples = samples_or_throw(f);
  auto check_field = [&](const std::optional<ParamField>& p,
                         const char* name) {
    if (!p) return;
    if (!p->value) throw ModelError(std::string(name) + " field not callable");
    if (!(p->lower <= p->upper))
      throw ModelError(std::string(name) + " range is empty");
    for (const auto& x : samples) {
      const double v = p->value(x);
      if (v < p->lower - 1e-12 || v > p->upper + 1e-12)
        throw ModelError(std::string(name) +
                         " leaves its declared range on a state sample");
    }
  };
  check_field(f.alpha, "alpha");
  check_field(f.beta, "beta");
  check_field(f.log_order, "log_order");
  if (f.alpha && !(f.alpha->lower > 0.0))
    throw ModelError("order field needs a positive lower bound");
  if ((f.kind == "stable" || f.kind == "stable_like") &&
      !(f.alpha && f.alpha->upper < 2.0))
    throw ModelError("stable order must stay below 2");
  if (f.kind == "subordinated" && !(f.alpha && f.alpha->upper <= 1.0))
    throw ModelError("subordination order must stay inside (0, 1]");
  if (f.beta && !(f.beta->lower > 0.0))
    throw ModelError("density scale field needs a positive lower bound");

  if (f.symbol_only) {
    if (!f.symbol_override)
      throw ModelError("symbol-only family carries no symbol");
    return;
  }
  validate_triplet(f.triplet, samples);
  if (!f.symbol_override) return;
  const std::vector<State> probes = {samples.front(),
                                     samples[samples.size() / 2],
                                     samples.back()};
  for (const auto& x : probes)
    for (const double rho : {0.02, 0.2, 2.0, 20.0}) {
      const double q = eval_symbol(f.triplet, x, rho);
      const double o = f.symbol_override(x, rho);
      if (std::fabs(o - q) > override_rel_tol * std::max(q, 1e-300))
        throw ModelError(
            "symbol override disagrees with triplet quadrature beyond the "
            "configured tolerance");
    }
}

double radial_symbol_profile(const ProcessFamily& f, EnvelopeSelector sel,
                             double rho) {
  double acc = fold_init(sel);
  for (const auto& x : samples_or_throw(f))
    acc = fold(sel, acc,
               f.symbol_override ? f.symbol_override(x, rho)
                                 : eval_symbol(f.triplet, x, rho));
  return acc;
}

namespace {

void require_measure(const ProcessFamily& f) {
  if (f.symbol_only)
    throw ModelError(
        "family provides only a symbol; tail functionals are unavailable");
}

}  // namespace

double cumulative_tail_integral(const ProcessFamily& f, EnvelopeSelector sel,
                                double rho) {
  require_measure(f);
  double acc = fold_init(sel);
  for (const auto& x : samples_or_throw(f))
    acc = fold(sel, acc, cumulative_tail(f.triplet, x, rho));
  return acc;
}

EnvelopeTailProfiles envelope_tail_profiles(const ProcessFamily& f,
                                            EnvelopeSelector sel,
                                            const std::vector<double>& grid) {
  require_measure(f);
  const auto& samples = samples_or_throw(f);
  EnvelopeTailProfiles out;
  out.ball.assign(grid.size(), fold_init(sel));
  out.second_moment.assign(grid.size(), fold_init(sel));
  out.cumulative.assign(grid.size(), fold_init(sel));
  for (const auto& x : samples) {
    const TailGridProfiles p = tail_profiles(f.triplet, x, grid);
    for (size_t i = 0; i < grid.size(); ++i) {
      out.ball[i] = fold(sel, out.ball[i], p.ball[i]);
      out.second_moment[i] =
          fold(sel, out.second_moment[i], p.second_moment[i]);
      const double h =
          0.5 * grid[i] * grid[i] * p.ball[i] + 0.5 * p.second_moment[i];
      out.cumulative[i] = fold(sel, out.cumulative[i], h);
    }
  }
  return out;
}

SecondMomentReport second_moment_classifier(const ProcessFamily& f,
                                            EnvelopeSelector sel) {
  SecondMomentReport r;
  if (f.symbol_only) return r;  // no measure to classify
  if (f.triplet.jump_density.is_zero()) {
    // rings carry finite mass inside a ball
    r.value = SecondMomentClass::Finite;
    return r;
  }
  // deep window: transient corrections of saturating moments (relative
  // size ~ 1/ln rho) fall under the log-exponent bands out here
  const std::vector<double> grid = expand_grid(GridSpec{1e8, 1e12, 48});
  const std::vector<double> prof =
      envelope_tail_profiles(f, sel, grid).second_moment;
  if (*std::max_element(prof.begin(), prof.end()) <= 0.0) {
    r.value = SecondMomentClass::Finite;
    return r;
  }
  r.fit = fit_asymptote(grid, prof, End::Infinity);
  if (r.fit.unreliable) return r;
  const double a = r.fit.exponent_a;
  const double b = r.fit.log_exponent_b;
  if (a > 0.05)
    r.value = SecondMomentClass::Infinite;
  else if (std::fabs(a) <= 0.05 && b >= 0.5)
    r.value = SecondMomentClass::Infinite;
  else if (std::fabs(a) <= 0.05 && b <= 0.15)
    r.value = SecondMomentClass::Finite;
  return r;
}

UnimodalityCertificate quasi_unimodality_certificate(
    const LevyTriplet2D& t, const std::vector<State>& states) {
  UnimodalityCertificate c;
  const double ring_radius =
      t.finite_part ? t.finite_part->enclosing_radius : 0.0;
  const auto& n = t.jump_density;
  if (n.is_zero()) {
    c.holds = true;
    c.u0 = ring_radius;
    c.source = "trivial";
    return c;
  }
  if (n.decreasing_beyond) {
    c.holds = true;
    c.u0 = std::max(*n.decreasing_beyond, ring_radius);
    c.source = "declared";
    return c;
  }

  const std::vector<State> probe_states =
      states.empty() ? std::vector<State>{State::Zero()} : states;
  const double lo = std::max(n.support_floor, 1e-3);
  const double hi = 1e8;
  const int per_decade = 16;
  const int count =
      static_cast<int>(std::ceil(per_decade * std::log10(hi / lo))) + 1;
  const double step = std::log(hi / lo) / (count - 1);
  double worst_u0 = lo;
  for (const auto& x : probe_states) {
    double prev = n(x, lo);
    double last_violation = 0.0;
    for (int i = 1; i < count; ++i) {
      const double u = lo * std::exp(step * i);
      const double v = n(x, u);
      if (v > prev * (1.0 + 1e-9) + 1e-300) last_violation = u;
      prev = v;
    }
    if (last_violation > hi * 1e-2) return c;  // still rising near the top
    if (last_violation > 0.0) {
      // first grid point beyond the last observed rise
      const double u0 = last_violation * std::exp(step);
      worst_u0 = std::max(worst_u0, u0);
    }
  }
  c.holds = true;
  c.u0 = std::max(worst_u0, ring_radius);
  c.source = "sampled";
  return c;
}

}  // namespace levy2d
