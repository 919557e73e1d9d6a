#include "levy2d/transforms.hpp"

#include <Eigen/LU>
#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "levy2d/errors.hpp"
#include "levy2d/quadrature.hpp"
#include "levy2d/symbol.hpp"
#include "levy2d/tail_functionals.hpp"

namespace levy2d {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(6);
  os << x;
  return os.str();
}
}  // namespace

Eigen::Matrix2d PlaneRotation::matrix() const {
  const double c = std::cos(angle);
  const double s = std::sin(angle);
  Eigen::Matrix2d m;
  m << c, -s, s, c;
  return m;
}

const char* to_string(GateState g) {
  switch (g) {
    case GateState::Holds: return "holds";
    case GateState::Fails: return "fails";
    default: return "unknown";
  }
}

const char* to_string(EquivalenceConclusion c) {
  switch (c) {
    case EquivalenceConclusion::RecurrenceEquivalent:
      return "recurrence_equivalent";
    case EquivalenceConclusion::FullyEquivalent: return "fully_equivalent";
    default: return "not_established";
  }
}

LinearTransformResult linear_transform(const LevyTriplet2D& t,
                                       const Eigen::Matrix2d& m) {
  const double det = m.determinant();
  if (!(std::fabs(det) > 1e-14 * std::max(1.0, m.squaredNorm())))
    throw ModelError("linear transform needs a regular matrix");

  LinearTransformResult out;
  const Eigen::Matrix2d minv = [&] {
    Eigen::Matrix2d inv;
    inv << m(1, 1), -m(0, 1), -m(1, 0), m(0, 0);
    return Eigen::Matrix2d(inv / det);
  }();
  const Eigen::Matrix2d mt = m.transpose();
  const LevyTriplet2D base = t;
  out.symbol = [base, minv, mt](const State& x, const Eigen::Vector2d& xi) {
    return eval_symbol(base, minv * x, (mt * xi).norm());
  };

  // Conformal iff M^T M is a positive multiple of the identity.
  const Eigen::Matrix2d gram = mt * m;
  const double s2 = 0.5 * (gram(0, 0) + gram(1, 1));
  const bool conformal = std::fabs(gram(0, 1)) <= 1e-12 * s2 &&
                         std::fabs(gram(1, 0)) <= 1e-12 * s2 &&
                         std::fabs(gram(0, 0) - gram(1, 1)) <= 1e-12 * s2;
  if (!conformal) {
    out.note = "general matrix leaves the radial type; symbol evaluator only";
    return out;
  }

  const double s = std::sqrt(s2);
  out.in_type = true;
  LevyTriplet2D res;
  if (t.diffusion) {
    auto d = t.diffusion;
    res.diffusion = [d, minv, s2](const State& x) { return s2 * d(minv * x); };
  }
  if (!t.jump_density.is_zero()) {
    const RadialDensity n = t.jump_density;
    res.jump_density.density = [n, minv, s, s2](const State& x, double u) {
      return n(minv * x, u / s) / s2;
    };
  }
  res.jump_density.support_floor = t.jump_density.support_floor * s;
  if (t.jump_density.decreasing_beyond)
    res.jump_density.decreasing_beyond = *t.jump_density.decreasing_beyond * s;
  res.jump_density.declared_tail = t.jump_density.declared_tail;
  for (double e : t.jump_density.interior_edges)
    res.jump_density.interior_edges.push_back(e * s);
  if (t.finite_part) {
    FinitePart fp;
    fp.enclosing_radius = t.finite_part->enclosing_radius * s;
    for (const Ring& r : t.finite_part->rings)
      fp.rings.push_back({r.radius * s, r.mass});
    res.finite_part = fp;
  }
  out.triplet = res;
  out.note = "conformal map, scale " + fmt(s) +
             ": radial type preserved; cutoff drift correction vanishes by "
             "symmetry";
  return out;
}

namespace {

// sup_x 2*pi int u^3 |n_A(x, u) - n_B(Rx, u)| du; +infinity when the tail
// stops contracting (the engines report that as QuadratureError).
double density_distance(const ProcessFamily& a, const ProcessFamily& b,
                        const Eigen::Matrix2d& rot) {
  const RadialDensity& na = a.triplet.jump_density;
  const RadialDensity& nb = b.triplet.jump_density;
  Cuts cuts;
  auto add_cut = [&cuts](double v) {
    if (v > 0.0) cuts.push_back(v);
  };
  add_cut(na.support_floor);
  add_cut(nb.support_floor);
  for (double e : na.interior_edges) add_cut(e);
  for (double e : nb.interior_edges) add_cut(e);

  double mid_hi = 10.0;
  for (double c : cuts) mid_hi = std::max(mid_hi, 2.0 * c);

  double sup = 0.0;
  for (const State& x : a.state_samples) {
    const State y = rot * x;
    auto w = [&](double u) {
      return u * u * u * std::fabs(na(x, u) - nb(y, u));
    };
    try {
      double v = integrate_from_zero(w, 1.0, 1e-7, &cuts).value;
      v += integrate(w, 1.0, mid_hi, 1e-7, 0.0, &cuts).value;
      v += integrate_to_infinity(w, mid_hi, 1e-7, &cuts).value;
      sup = std::max(sup, v);
    } catch (const QuadratureError&) {
      return kInf;
    }
  }
  return 2.0 * M_PI * sup;
}

double ring_difference(const LevyTriplet2D& a, const LevyTriplet2D& b) {
  std::vector<Ring> ra, rb;
  if (a.finite_part) ra = a.finite_part->rings;
  if (b.finite_part) rb = b.finite_part->rings;
  auto by_radius = [](const Ring& l, const Ring& r) {
    return l.radius < r.radius;
  };
  std::sort(ra.begin(), ra.end(), by_radius);
  std::sort(rb.begin(), rb.end(), by_radius);
  double sum = 0.0;
  std::size_t i = 0, j = 0;
  while (i < ra.size() || j < rb.size()) {
    if (j == rb.size() ||
        (i < ra.size() &&
         ra[i].radius < rb[j].radius * (1.0 - 1e-9) - 1e-300)) {
      sum += ra[i].radius * ra[i].radius * std::fabs(ra[i].mass);
      ++i;
    } else if (i == ra.size() ||
               rb[j].radius < ra[i].radius * (1.0 - 1e-9) - 1e-300) {
      sum += rb[j].radius * rb[j].radius * std::fabs(rb[j].mass);
      ++j;
    } else {
      sum += ra[i].radius * ra[i].radius * std::fabs(ra[i].mass - rb[j].mass);
      ++i;
      ++j;
    }
  }
  return sum;
}

// liminf of inf_x q_A / rho^2 at the origin, read off the fitted power-log
// class: below-quadratic growth means +infinity, above-quadratic means 0,
// and at the quadratic exponent the log factor tips the scale.
double fitted_liminf(const ProcessFamily& a, bool& reliable) {
  reliable = false;
  std::vector<double> grid = expand_grid(default_origin_grid());
  std::vector<double> q(grid.size());
  try {
    for (std::size_t i = 0; i < grid.size(); ++i)
      q[i] = radial_symbol_profile(a, EnvelopeSelector::InfOverX, grid[i]);
    const AsymptoticFit fit = fit_asymptote(grid, q, End::Origin);
    if (fit.unreliable) return 0.0;
    reliable = true;
    if (fit.exponent_a < 2.0 - 0.02) return kInf;
    if (fit.exponent_a > 2.0 + 0.02) return 0.0;
    if (fit.log_exponent_b > 0.15) return kInf;
    if (fit.log_exponent_b < -0.15) return 0.0;
    return fit.scale_C;
  } catch (const std::exception&) {
    return 0.0;
  }
}

}  // namespace

PerturbationReport perturbation_equivalent(const ProcessFamily& a,
                                           const ProcessFamily& b,
                                           const PlaneRotation& rotation) {
  if (a.symbol_only || b.symbol_only)
    throw ModelError("perturbation distance needs jump densities");
  if (a.state_samples.empty() || b.state_samples.empty())
    throw ModelError("family carries no state samples");

  const Eigen::Matrix2d rot = rotation.matrix();
  PerturbationReport rep;
  rep.distance = density_distance(a, b, rot) +
                 ring_difference(a.triplet, b.triplet);

  double dc = 0.0;
  for (const State& x : a.state_samples)
    dc = std::max(dc, std::fabs(a.triplet.c(x) - b.triplet.c(rot * x)));
  rep.constant_c = 0.5 * dc + rep.distance;

  if (!std::isfinite(rep.distance)) {
    rep.diffusive_floor_gate = GateState::Unknown;
    rep.conclusion = EquivalenceConclusion::NotEstablished;
    rep.note = "second-moment distance diverges; no equivalence established";
    return rep;
  }

  if (rep.constant_c == 0.0) {
    rep.diffusive_floor_gate = GateState::Holds;
    rep.conclusion = EquivalenceConclusion::FullyEquivalent;
    rep.note = "zero perturbation: families coincide up to the rotation";
    return rep;
  }

  if (a.state_mode == StateMode::Constant &&
      b.state_mode == StateMode::Constant) {
    rep.diffusive_floor_gate = GateState::Holds;
    rep.note =
        "constant-coefficient pair: a radial symbol in the plane meets the "
        "diffusive lower bound automatically";
  } else {
    bool reliable = false;
    const double liminf = fitted_liminf(a, reliable);
    if (!reliable) {
      rep.diffusive_floor_gate = GateState::Unknown;
      rep.note = "diffusive lower-bound fit unreliable";
    } else if (liminf == kInf) {
      rep.diffusive_floor_gate = GateState::Holds;
      rep.note = "sub-quadratic symbol growth: lower bound is infinite";
    } else if (std::fabs(liminf - rep.constant_c) <=
               0.05 * std::max(rep.constant_c, 1e-300)) {
      rep.diffusive_floor_gate = GateState::Unknown;
      rep.note = "lower bound ties with the perturbation constant (" +
                 fmt(liminf) + " vs " + fmt(rep.constant_c) + ")";
    } else if (liminf > rep.constant_c) {
      rep.diffusive_floor_gate = GateState::Holds;
      rep.note = "diffusive lower bound " + fmt(liminf) +
                 " exceeds the perturbation constant " + fmt(rep.constant_c);
    } else {
      rep.diffusive_floor_gate = GateState::Fails;
      rep.note = "diffusive lower bound " + fmt(liminf) +
                 " falls below the perturbation constant " +
                 fmt(rep.constant_c);
    }
  }

  rep.conclusion = rep.diffusive_floor_gate == GateState::Holds
                       ? EquivalenceConclusion::FullyEquivalent
                       : EquivalenceConclusion::RecurrenceEquivalent;
  return rep;
}

DominationResult tail_dominates(const ProcessFamily& a, const ProcessFamily& b,
                                double u0, TailComparison mode) {
  if (u0 < 0.0) throw ConfigError("domination threshold must be >= 0");
  if (a.symbol_only || b.symbol_only)
    throw ModelError("tail comparison needs jump measures");
  if (a.state_samples.empty() || b.state_samples.empty())
    throw ModelError("family carries no state samples");

  std::vector<State> states = a.state_samples;
  for (const State& x : b.state_samples) {
    bool duplicate = false;
    for (const State& y : states)
      if ((x - y).norm() <= 1e-12) duplicate = true;
    if (!duplicate) states.push_back(x);
  }

  DominationResult res;
  res.points_per_decade = 64;
  res.grid_lo = u0 > 0.0 ? u0 : 0.01;
  res.grid_hi = res.grid_lo * 1e4;
  const int total = 4 * res.points_per_decade;
  std::vector<double> grid(total + 1);
  for (int k = 0; k <= total; ++k)
    grid[k] = res.grid_lo *
              std::pow(10.0, static_cast<double>(k) / res.points_per_decade);

  for (const State& x : states) {
    std::vector<double> ta(grid.size()), tb(grid.size());
    if (mode == TailComparison::BallTail) {
      ta = tail_profiles(a.triplet, x, grid).ball;
      tb = tail_profiles(b.triplet, x, grid).ball;
    } else {
      for (std::size_t i = 0; i < grid.size(); ++i) {
        ta[i] = halfplane_tail(a.triplet, x, grid[i]);
        tb[i] = halfplane_tail(b.triplet, x, grid[i]);
      }
    }
    for (std::size_t i = 0; i < grid.size(); ++i) {
      if (ta[i] - tb[i] < -1e-12 * std::max(1.0, tb[i])) {
        res.dominates = false;
        res.witness_u = grid[i];
        res.note = "tail comparison fails at u = " + fmt(grid[i]) +
                   " (A = " + fmt(ta[i]) + ", B = " + fmt(tb[i]) + ")";
        return res;
      }
    }
  }
  res.dominates = true;
  res.note = std::string(mode == TailComparison::BallTail ? "ball" : "halfplane") +
             " tails compared on [" + fmt(res.grid_lo) + ", " +
             fmt(res.grid_hi) + "], " + std::to_string(res.points_per_decade) +
             " points per decade, " + std::to_string(states.size()) +
             " state(s)";
  return res;
}

Verdict transfer_classification(const Verdict& src,
                                const DominationResult& domination,
                                TransferDirection direction,
                                const ProcessFamily& dominating) {
  Verdict v;
  v.criterion = "transfer";
  v.fits = src.fits;
  v.assumptions.push_back(
      {"source-verdict", true,
       "criterion " + src.criterion + ", value " + to_string(src.value)});
  v.assumptions.push_back({"tail-domination", domination.dominates,
                           domination.note});
  // Tail-criterion sources state the integral fact directly; a symbol
  // source reaches it only through the equivalence chain, which costs the
  // dominating family's monotone-tail certificate.
  const bool integral_fact =
      src.criterion == "tails" || src.criterion == "p5";

  if (!domination.dominates) {
    v.note = "domination fails; nothing transfers";
    return v;
  }

  if (direction == TransferDirection::RecurrenceToDominated) {
    if (src.value != VerdictValue::Recurrent) {
      v.note = "source verdict is not recurrent; nothing to pass down";
      return v;
    }
    if (integral_fact) {
      v.value = VerdictValue::Recurrent;
      v.note = "recurrence-side divergence passes to the dominated family";
      return v;
    }
    const UnimodalityCertificate cert = quasi_unimodality_certificate(
        dominating.triplet, dominating.state_samples);
    v.assumptions.push_back(
        {"monotone-tail", cert.holds,
         cert.holds ? "dominating family non-increasing beyond u0 = " +
                          fmt(cert.u0) + " (" + cert.source + ")"
                    : "no monotone-tail certificate for the dominating family"});
    if (cert.holds) {
      v.value = VerdictValue::Recurrent;
      v.note = "symbol-side recurrence converted to tail divergence and "
               "passed down";
    } else {
      v.note = "symbol source needs the dominating family's monotone-tail "
               "certificate; not available";
    }
    return v;
  }

  if (src.value != VerdictValue::Transient) {
    v.note = "source verdict is not transient; nothing to pass up";
    return v;
  }
  if (!integral_fact) {
    v.assumptions.push_back(
        {"source-integral-fact", false,
         "transience transfer needs a tail-integral source verdict"});
    v.note = "source argues through the symbol; transfer not attempted";
    return v;
  }
  const UnimodalityCertificate cert = quasi_unimodality_certificate(
      dominating.triplet, dominating.state_samples);
  v.assumptions.push_back(
      {"monotone-tail", cert.holds,
       cert.holds ? "dominating family non-increasing beyond u0 = " +
                        fmt(cert.u0) + " (" + cert.source + ")"
                  : "no monotone-tail certificate for the dominating family"});
  const SecondMomentReport sm =
      second_moment_classifier(dominating, EnvelopeSelector::InfOverX);
  v.assumptions.push_back(
      {"infinite-second-moment", sm.value == SecondMomentClass::Infinite,
       std::string("dominating family's inf-envelope second moment "
                   "classified ") +
           to_string(sm.value)});
  if (cert.holds && sm.value == SecondMomentClass::Infinite) {
    v.value = VerdictValue::Transient;
    v.note = "transience-side convergence passes to the dominating family "
             "under both gates";
  } else {
    v.note = std::string("transfer gate failed: ") +
             (cert.holds ? "infinite-second-moment" : "monotone-tail");
  }
  return v;
}

}  // namespace levy2d
