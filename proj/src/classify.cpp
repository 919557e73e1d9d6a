#include "levy2d/classify.hpp"

#include <cmath>
#include <limits>
#include <optional>
#include <sstream>

#include "levy2d/errors.hpp"

namespace levy2d {

const char* to_string(VerdictValue v) {
  switch (v) {
    case VerdictValue::Recurrent: return "recurrent";
    case VerdictValue::Transient: return "transient";
    default: return "inconclusive";
  }
}

namespace {

// Standing framework hypothesis: verdicts for state-dependent families are
// conditional on it and it is recorded, not verified.
GateCheck framework_gate() {
  return {"open-set-irreducible", true,
          "standing assumption for state-dependent families; recorded, not verified"};
}

GateCheck radial_gate() {
  return {"radial-symbol", true,
          "symbol depends on the frequency through its norm by construction; "
          "imaginary part vanishes identically"};
}

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(6);
  os << x;
  return os.str();
}

// Fits one profile and decides its integral, demoting any modeling or
// sampling failure to an Inconclusive entry instead of aborting the
// verdict: a criterion with several routes should keep the routes that
// still work.
struct Route {
  LabeledFit entry;
  bool fitted = false;
  std::string error;
};

Route run_route(const std::string& label, const std::vector<double>& grid,
                const std::vector<double>& values, End end, IntegralForm form) {
  Route r;
  r.entry.label = label;
  try {
    r.entry.fit = fit_asymptote(grid, values, end);
    r.entry.decision = decide_integral(r.entry.fit, form);
    r.fitted = true;
  } catch (const std::exception& e) {
    r.entry.decision = IntegralDecision::Inconclusive;
    r.error = e.what();
  }
  return r;
}

Verdict inconclusive(std::string criterion, std::string note) {
  Verdict v;
  v.criterion = std::move(criterion);
  v.note = std::move(note);
  return v;
}

bool positive_somewhere(const std::vector<double>& values) {
  for (double v : values)
    if (v > 0.0) return true;
  return false;
}

// Gates shared by every transience route that argues through the jump
// tails: the tail comparisons need radially decreasing tails beyond some
// radius, and the truncated second moment must grow without bound on the
// inf-envelope.
struct TransienceGates {
  GateCheck monotone;
  GateCheck growth;
  SecondMomentReport moment;
  bool hold() const { return monotone.holds && growth.holds; }
};

TransienceGates transience_gates(const ProcessFamily& f) {
  TransienceGates g;
  UnimodalityCertificate cert =
      quasi_unimodality_certificate(f.triplet, f.state_samples);
  // Monotone beyond u0 implies monotone beyond any larger radius, so a
  // certificate at any u0 upgrades to one strictly above 1 for free.
  double u0_eff = std::max(cert.u0, 1.0 + 0x1p-20);
  g.monotone.name = "monotone-tail";
  g.monotone.holds = cert.holds;
  g.monotone.detail = cert.holds
      ? "density non-increasing beyond u0 = " + fmt(u0_eff) +
            " (" + cert.source + ")"
      : "no radius beyond which the density is certified non-increasing";
  g.moment = second_moment_classifier(f, EnvelopeSelector::InfOverX);
  g.growth.name = "infinite-second-moment";
  g.growth.holds = g.moment.value == SecondMomentClass::Infinite;
  g.growth.detail =
      std::string("inf-envelope truncated second moment classified ") +
      to_string(g.moment.value);
  return g;
}

}  // namespace

Verdict classify_chung_fuchs(const ProcessFamily& f) {
  Verdict v;
  v.criterion = "chung_fuchs";
  v.assumptions.push_back(radial_gate());
  v.assumptions.push_back(framework_gate());
  v.assumptions.push_back(
      {"small-ball-window", true,
       "transience needs convergence near some r > 0 only; the fit window "
       "sits at the origin, which is the strongest such r"});

  std::vector<double> grid = expand_grid(default_origin_grid());
  std::vector<double> q_sup(grid.size()), q_inf(grid.size());
  try {
    for (std::size_t i = 0; i < grid.size(); ++i) {
      q_sup[i] = radial_symbol_profile(f, EnvelopeSelector::SupOverX, grid[i]);
      q_inf[i] = radial_symbol_profile(f, EnvelopeSelector::InfOverX, grid[i]);
    }
  } catch (const std::exception& e) {
    return inconclusive(v.criterion,
                        std::string("symbol envelope unavailable: ") + e.what());
  }

  Route sup = run_route("sup symbol at origin", grid, q_sup, End::Origin,
                        IntegralForm::OriginWeighted);
  Route inf = run_route("inf symbol at origin", grid, q_inf, End::Origin,
                        IntegralForm::OriginWeighted);
  v.fits.push_back(sup.entry);
  v.fits.push_back(inf.entry);
  if (!sup.fitted && !inf.fitted) {
    v.note = "symbol fits failed: " + sup.error;
    return v;
  }

  bool rec = sup.entry.decision == IntegralDecision::Divergent;
  bool tra = inf.entry.decision == IntegralDecision::Convergent;
  if (rec && tra) {
    v.note = "envelope fits contradict each other (sup divergent, inf convergent)";
    return v;
  }
  if (rec) {
    v.value = VerdictValue::Recurrent;
    v.note = "rho drho / sup q divergent at the origin";
  } else if (tra) {
    v.value = VerdictValue::Transient;
    v.note = "rho drho / inf q convergent at the origin";
  } else {
    v.note = "both envelope integrals undecided";
  }
  return v;
}

Verdict classify_by_tails(const ProcessFamily& f) {
  Verdict v;
  v.criterion = "tails";
  if (f.symbol_only)
    return inconclusive(v.criterion,
                        "family provides only a symbol; tail functionals are unavailable");
  v.assumptions.push_back(framework_gate());

  std::vector<double> grid = expand_grid(default_infinity_grid());
  EnvelopeTailProfiles sup, inf;
  try {
    sup = envelope_tail_profiles(f, EnvelopeSelector::SupOverX, grid);
    inf = envelope_tail_profiles(f, EnvelopeSelector::InfOverX, grid);
  } catch (const std::exception& e) {
    return inconclusive(v.criterion,
                        std::string("tail profiles unavailable: ") + e.what());
  }
  if (!positive_somewhere(sup.cumulative)) {
    TransienceGates gates = transience_gates(f);
    v.assumptions.push_back(gates.monotone);
    v.assumptions.push_back(gates.growth);
    v.note = "cumulative tail vanishes; no jump measure to test";
    return v;
  }

  std::vector<double> g_sup(grid.size()), g_inf(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    g_sup[i] = grid[i] * sup.cumulative[i];
    g_inf[i] = grid[i] * inf.cumulative[i];
  }

  Route rec = run_route("rho * sup cumulative tail", grid, g_sup,
                        End::Infinity, IntegralForm::InfinityReciprocal);
  Route tra = run_route("rho * inf cumulative tail", grid, g_inf,
                        End::Infinity, IntegralForm::InfinityReciprocal);
  v.fits.push_back(rec.entry);
  v.fits.push_back(tra.entry);

  TransienceGates gates = transience_gates(f);
  v.assumptions.push_back(gates.monotone);
  v.assumptions.push_back(gates.growth);

  bool rec_fires = rec.entry.decision == IntegralDecision::Divergent;
  bool tra_fires = tra.entry.decision == IntegralDecision::Convergent;
  if (rec_fires && tra_fires) {
    v.note = "envelope fits contradict each other (sup divergent, inf convergent)";
    return v;
  }
  if (rec_fires) {
    v.value = VerdictValue::Recurrent;
    v.note = "drho / (rho sup H) divergent; no gate needed on this side";
    return v;
  }
  if (tra_fires) {
    if (gates.hold()) {
      v.value = VerdictValue::Transient;
      v.note = "drho / (rho inf H) convergent under both transience gates";
    } else {
      v.note = std::string("inf-side integral convergent but gate failed: ") +
               (gates.monotone.holds ? gates.growth.name : gates.monotone.name);
    }
    return v;
  }
  v.note = "both envelope integrals undecided";
  return v;
}

Verdict classify_sufficient_p5(const ProcessFamily& f) {
  Verdict v;
  v.criterion = "p5";
  if (f.symbol_only)
    return inconclusive(v.criterion,
                        "family provides only a symbol; tail functionals are unavailable");
  v.assumptions.push_back(framework_gate());

  // A finite sup second moment forces recurrence outright.
  SecondMomentReport sup_moment =
      second_moment_classifier(f, EnvelopeSelector::SupOverX);
  v.assumptions.push_back(
      {"finite-sup-second-moment",
       sup_moment.value == SecondMomentClass::Finite,
       std::string("sup-envelope truncated second moment classified ") +
           to_string(sup_moment.value)});
  if (sup_moment.value == SecondMomentClass::Finite) {
    v.value = VerdictValue::Recurrent;
    v.note = "sup second moment finite; recurrent with no integral test";
    if (!sup_moment.fit.grid.empty()) {
      LabeledFit lf;
      lf.label = "sup truncated second moment";
      lf.fit = sup_moment.fit;
      lf.decision = IntegralDecision::Inconclusive;
      v.fits.push_back(lf);
    }
    return v;
  }

  std::vector<double> grid = expand_grid(default_infinity_grid());
  EnvelopeTailProfiles sup, inf;
  try {
    sup = envelope_tail_profiles(f, EnvelopeSelector::SupOverX, grid);
    inf = envelope_tail_profiles(f, EnvelopeSelector::InfOverX, grid);
  } catch (const std::exception& e) {
    return inconclusive(v.criterion,
                        std::string("tail profiles unavailable: ") + e.what());
  }
  if (!positive_somewhere(sup.ball) && !positive_somewhere(sup.second_moment))
    return inconclusive(v.criterion,
                        "tail functionals vanish; no jump measure to test");

  std::vector<double> two_sup(grid.size()), two_inf(grid.size());
  std::vector<double> ball_inf(grid.size()), m2_inf(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    double r = grid[i];
    two_sup[i] = r * r * r * sup.ball[i] + r * sup.second_moment[i];
    two_inf[i] = r * r * r * inf.ball[i] + r * inf.second_moment[i];
    ball_inf[i] = r * r * r * inf.ball[i];
    m2_inf[i] = r * inf.second_moment[i];
  }

  Route rec = run_route("rho^3 sup ball + rho sup m2", grid, two_sup,
                        End::Infinity, IntegralForm::InfinityReciprocal);
  v.fits.push_back(rec.entry);

  TransienceGates gates = transience_gates(f);
  v.assumptions.push_back(gates.monotone);
  v.assumptions.push_back(gates.growth);

  std::vector<Route> tra_routes;
  tra_routes.push_back(run_route("rho^3 inf ball + rho inf m2", grid, two_inf,
                                 End::Infinity, IntegralForm::InfinityReciprocal));
  tra_routes.push_back(run_route("rho^3 inf ball", grid, ball_inf,
                                 End::Infinity, IntegralForm::InfinityReciprocal));
  tra_routes.push_back(run_route("rho inf m2", grid, m2_inf,
                                 End::Infinity, IntegralForm::InfinityReciprocal));
  // Boundary route on the density itself; it needs the monotone-tail
  // certificate even more directly than the others, which gates.hold()
  // already demands.
  if (!f.state_samples.empty()) {
    std::vector<double> dens(grid.size());
    bool ok = true;
    for (std::size_t i = 0; i < grid.size() && ok; ++i) {
      double lo = std::numeric_limits<double>::infinity();
      for (const State& x : f.state_samples)
        lo = std::min(lo, f.triplet.jump_density(x, grid[i]));
      dens[i] = std::pow(grid[i], 5) * lo;
      ok = std::isfinite(dens[i]);
    }
    if (ok)
      tra_routes.push_back(run_route("rho^5 inf density", grid, dens,
                                     End::Infinity,
                                     IntegralForm::InfinityReciprocal));
  }

  bool tra_fires = false;
  for (const Route& r : tra_routes) {
    v.fits.push_back(r.entry);
    tra_fires = tra_fires || r.entry.decision == IntegralDecision::Convergent;
  }
  bool rec_fires = rec.entry.decision == IntegralDecision::Divergent;

  if (rec_fires && tra_fires) {
    v.note = "sufficient tests fired in both directions; refusing to pick";
    return v;
  }
  if (rec_fires) {
    v.value = VerdictValue::Recurrent;
    v.note = "two-term sup integral divergent; no gate needed on this side";
  } else if (tra_fires) {
    if (gates.hold()) {
      v.value = VerdictValue::Transient;
      v.note = "an inf-side integral converges under both transience gates";
    } else {
      v.note = std::string("an inf-side integral converges but gate failed: ") +
               (gates.monotone.holds ? gates.growth.name : gates.monotone.name);
    }
  } else {
    v.note = "no sufficient test fired";
  }
  return v;
}

Verdict classify_regvar(const RadialDensity& density) {
  Verdict v;
  v.criterion = "regvar";
  if (density.is_zero())
    throw ModelError("regvar test needs a jump density with a declared tail");
  if (!density.declared_tail)
    throw ModelError("regvar test needs a declared tail index");
  double delta = density.declared_tail->power;
  double logexp = density.declared_tail->log_exponent;
  if (delta > -2.0)
    throw ModelError("declared tail index " + fmt(delta) +
                     " > -2 is not integrable against u^3 at infinity");

  LevyTriplet2D t;
  t.jump_density = density;
  UnimodalityCertificate cert = quasi_unimodality_certificate(t, {State::Zero()});
  v.assumptions.push_back(
      {"monotone-tail", cert.holds,
       cert.holds ? "density non-increasing beyond u0 = " + fmt(cert.u0) +
                        " (" + cert.source + ")"
                  : "no radius beyond which the density is certified non-increasing"});
  v.assumptions.push_back(
      {"declared-tail", true,
       "index " + fmt(delta) + ", log exponent " + fmt(logexp)});
  if (!cert.holds) {
    v.note = "trichotomy needs an eventually non-increasing density";
    return v;
  }

  constexpr double kBand = 1e-9;
  if (delta < -4.0 - kBand) {
    v.value = VerdictValue::Recurrent;
    v.note = "tail index below -4";
    return v;
  }
  if (delta > -4.0 + kBand) {
    v.value = VerdictValue::Transient;
    v.note = "tail index strictly between -4 and -2";
    return v;
  }

  // Boundary index: transient exactly when drho / (rho^5 n) converges.
  std::vector<double> grid = expand_grid(default_infinity_grid());
  std::vector<double> g(grid.size());
  State origin = State::Zero();
  for (std::size_t i = 0; i < grid.size(); ++i)
    g[i] = std::pow(grid[i], 5) * density(origin, grid[i]);
  Route boundary = run_route("rho^5 density at the boundary index", grid, g,
                             End::Infinity, IntegralForm::InfinityReciprocal);
  v.fits.push_back(boundary.entry);
  switch (boundary.entry.decision) {
    case IntegralDecision::Convergent:
      v.value = VerdictValue::Transient;
      v.note = "boundary integral converges";
      break;
    case IntegralDecision::Divergent:
      v.note = "boundary integral diverges; the test is one-directional, "
               "recurrence not established by it";
      break;
    default:
      v.note = boundary.fitted ? "boundary integral undecided"
                               : "boundary fit failed: " + boundary.error;
      break;
  }
  return v;
}

ClassificationReport reconcile(const std::vector<Verdict>& verdicts) {
  if (verdicts.empty())
    throw ConfigError("reconcile needs at least one verdict");
  ClassificationReport r;
  r.verdicts = verdicts;
  std::vector<std::string> rec, tra;
  for (const Verdict& v : verdicts) {
    if (v.value == VerdictValue::Recurrent) rec.push_back(v.criterion);
    if (v.value == VerdictValue::Transient) tra.push_back(v.criterion);
  }
  if (!rec.empty() && !tra.empty()) {
    r.contradiction = true;
    std::string note = "contradiction:";
    for (const auto& c : rec) note += " " + c + "=recurrent";
    for (const auto& c : tra) note += " " + c + "=transient";
    r.note = note;
    return r;
  }
  const auto& decided = rec.empty() ? tra : rec;
  if (decided.empty()) {
    r.note = "all criteria inconclusive";
    return r;
  }
  r.value = rec.empty() ? VerdictValue::Transient : VerdictValue::Recurrent;
  std::string note = std::to_string(decided.size()) + " criterion(s) decided:";
  for (const auto& c : decided) note += " " + c;
  r.note = note;
  return r;
}

}  // namespace levy2d
