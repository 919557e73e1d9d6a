#include "levy2d/report.hpp"

#include <Eigen/Core>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <set>
#include <sstream>
#include <vector>

#include "levy2d/classify.hpp"
#include "levy2d/errors.hpp"
#include "levy2d/occupation.hpp"
#include "levy2d/transforms.hpp"

namespace levy2d {

namespace {

using nlohmann::json;

constexpr const char* kToolVersion = "1.0.0";

// CSV cell; to_string would truncate small magnitudes to 0.000000
std::string num(double v) {
  std::ostringstream s;
  s << std::setprecision(12) << v;
  return s.str();
}

const char* to_string(StateMode m) {
  switch (m) {
    case StateMode::Constant:
      return "constant";
    case StateMode::Parametric:
      return "parametric";
    default:
      return "grid";
  }
}

json versions_block() {
  return json{{"levy2d", kToolVersion},
              {"eigen", std::to_string(EIGEN_WORLD_VERSION) + "." +
                            std::to_string(EIGEN_MAJOR_VERSION) + "." +
                            std::to_string(EIGEN_MINOR_VERSION)}};
}

json fit_to_json(const AsymptoticFit& fit) {
  json j;
  j["end"] = fit.end == End::Origin ? "origin" : "infinity";
  j["exponent_a"] = fit.exponent_a;
  j["log_exponent_b"] = fit.log_exponent_b;
  j["scale_c"] = fit.scale_C;
  j["residual"] = fit.residual;
  j["unreliable"] = fit.unreliable;
  if (!fit.grid.empty())
    j["grid"] = json{{"lo", fit.grid.front()},
                     {"hi", fit.grid.back()},
                     {"points", fit.grid.size()}};
  return j;
}

json verdict_to_json(const Verdict& v) {
  json j;
  j["criterion"] = v.criterion;
  j["verdict"] = to_string(v.value);
  j["note"] = v.note;
  j["fits"] = json::array();
  for (const LabeledFit& lf : v.fits) {
    json f = fit_to_json(lf.fit);
    f["label"] = lf.label;
    f["decision"] = to_string(lf.decision);
    j["fits"].push_back(std::move(f));
  }
  j["assumptions"] = json::array();
  for (const GateCheck& g : v.assumptions)
    j["assumptions"].push_back(
        json{{"name", g.name}, {"holds", g.holds}, {"detail", g.detail}});
  return j;
}

json family_block(const RunConfig& cfg, const ProcessFamily& f) {
  json j;
  j["config"] = cfg.source_path;
  j["kind"] = f.kind;
  j["envelope"] = json{{"mode", to_string(f.state_mode)},
                       {"state_samples", f.state_samples.size()},
                       {"note", f.envelope_note}};
  return j;
}

void log_line(std::ostream* log, const std::string& line) {
  if (log) *log << line << "\n";
}

// criterion dispatch for one analysis name; montecarlo and the two-family
// analyses are handled by the run drivers
Verdict run_criterion(const std::string& name, const ProcessFamily& f) {
  if (name == "chung_fuchs") return classify_chung_fuchs(f);
  if (name == "tails") return classify_by_tails(f);
  if (name == "p5") return classify_sufficient_p5(f);
  if (name == "regvar") return classify_regvar(f.triplet.jump_density);
  throw ConfigError("unknown criterion '" + name + "'");
}

struct CriteriaOutcome {
  std::vector<Verdict> verdicts;
  json criteria = json::array();
  json errors = json::array();
};

CriteriaOutcome run_criteria(const RunConfig& cfg, const ProcessFamily& f,
                             std::ostream* log) {
  CriteriaOutcome out;
  for (const std::string& name : cfg.analyses) {
    if (name == "montecarlo" || name == "compare" || name == "perturb")
      continue;
    try {
      Verdict v = run_criterion(name, f);
      log_line(log, "criterion " + name + ": " + to_string(v.value));
      out.criteria.push_back(verdict_to_json(v));
      out.verdicts.push_back(std::move(v));
    } catch (const std::exception& e) {
      log_line(log, "criterion " + name + " failed: " + e.what());
      out.errors.push_back(json{{"analysis", name}, {"message", e.what()}});
    }
  }
  return out;
}

ClassificationReport safe_reconcile(const std::vector<Verdict>& verdicts) {
  if (verdicts.empty()) {
    ClassificationReport rep;
    rep.note = "no analytic criterion produced a verdict";
    return rep;
  }
  return reconcile(verdicts);
}

std::filesystem::path prepare_out_dir(const std::string& out_dir) {
  std::filesystem::path dir = out_dir.empty() ? "." : out_dir;
  std::filesystem::create_directories(dir);
  return dir;
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot write '" + path.string() + "'");
  out << text;
}

std::vector<double> profile_grid() {
  // printable three-decade window on each side of rho = 1
  std::vector<double> grid;
  const int points = 121;
  for (int i = 0; i < points; ++i)
    grid.push_back(1e-3 * std::pow(10.0, 6.0 * i / (points - 1)));
  return grid;
}

void write_profile_csvs(const RunConfig& cfg, const ProcessFamily& f,
                        const std::filesystem::path& dir, json& artifacts,
                        json& errors, std::ostream* log) {
  if (cfg.output.symbol_csv) {
    try {
      std::string csv = "rho,value\n";
      for (double rho : profile_grid()) {
        const double v = radial_symbol_profile(f, EnvelopeSelector::SupOverX, rho);
        csv += num(rho) + "," + num(v) + "\n";
      }
      write_text(dir / *cfg.output.symbol_csv, csv);
      artifacts["symbol_csv"] = *cfg.output.symbol_csv;
      log_line(log, "wrote " + *cfg.output.symbol_csv);
    } catch (const std::exception& e) {
      errors.push_back(json{{"analysis", "symbol_csv"}, {"message", e.what()}});
    }
  }
  if (cfg.output.tail_csv) {
    try {
      if (f.symbol_only)
        throw ModelError("family provides only a symbol; no tail profile");
      const std::vector<double> grid = profile_grid();
      const EnvelopeTailProfiles prof =
          envelope_tail_profiles(f, EnvelopeSelector::SupOverX, grid);
      std::string csv = "rho,value\n";
      for (std::size_t i = 0; i < grid.size(); ++i)
        csv += num(grid[i]) + "," + num(prof.cumulative[i]) + "\n";
      write_text(dir / *cfg.output.tail_csv, csv);
      artifacts["tail_csv"] = *cfg.output.tail_csv;
      log_line(log, "wrote " + *cfg.output.tail_csv);
    } catch (const std::exception& e) {
      errors.push_back(json{{"analysis", "tail_csv"}, {"message", e.what()}});
    }
  }
}

// empirical-vs-analytic agreement; a conflict is a warning, not a
// contradiction, because a finite horizon cannot certify divergence
std::string empirical_agreement(VerdictValue analytic, EmpiricalVerdict emp) {
  if (emp == EmpiricalVerdict::Borderline)
    return "not decisive: the fitted exponent sits in the borderline band";
  if (analytic == VerdictValue::Inconclusive)
    return "not compared: no analytic verdict";
  const bool match =
      (analytic == VerdictValue::Recurrent &&
       emp == EmpiricalVerdict::RecurrentConsistent) ||
      (analytic == VerdictValue::Transient &&
       emp == EmpiricalVerdict::TransientConsistent);
  if (match) return "consistent";
  return "warning: the empirical exponent points the other way; treated as "
         "advisory, finite-horizon sampling cannot certify divergence";
}

void run_montecarlo_section(const RunConfig& cfg, const ProcessFamily& f,
                            VerdictValue analytic,
                            const std::filesystem::path& dir, json& doc,
                            json& errors, std::ostream* log) {
  try {
    const SimConfig sim = build_sim_config(cfg);
    log_line(log, "sampling " + std::to_string(sim.path_count) + " paths over " +
                      std::to_string(sim.probe_times.size()) + " probe times");
    const OccupationEstimate est = estimate_ball_probability(f, sim);
    const ReturnExponentFit fit = fit_return_exponent(est);
    json mc;
    mc["kappa"] = fit.kappa;
    mc["half_width"] = fit.half_width;
    mc["verdict"] = to_string(fit.verdict);
    mc["used_probes"] = fit.used_probes;
    mc["note"] = fit.note;
    mc["path_count"] = est.path_count;
    mc["probe_radius"] = est.probe_radius;
    mc["seed"] = cfg.numeric.seed;
    mc["agreement"] = empirical_agreement(analytic, fit.verdict);
    log_line(log, "empirical exponent " + std::to_string(fit.kappa) + " (" +
                      to_string(fit.verdict) + ")");
    if (cfg.output.montecarlo_csv) {
      std::string csv = "t,p_hat,stderr,n_paths\n";
      for (std::size_t i = 0; i < est.times.size(); ++i)
        csv += num(est.times[i]) + "," + num(est.p_hat[i]) + "," +
               num(est.std_err[i]) + "," + std::to_string(est.path_count) +
               "\n";
      write_text(dir / *cfg.output.montecarlo_csv, csv);
      doc["artifacts"][*cfg.output.montecarlo_csv] = "occupation estimate";
      log_line(log, "wrote " + *cfg.output.montecarlo_csv);
    }
    doc["montecarlo"] = std::move(mc);
  } catch (const std::exception& e) {
    log_line(log, std::string("montecarlo failed: ") + e.what());
    errors.push_back(json{{"analysis", "montecarlo"}, {"message", e.what()}});
  }
}

RunOutcome finish(json doc, json errors, bool contradiction,
                  const RunConfig& cfg, const std::filesystem::path& dir,
                  std::ostream* log) {
  if (!errors.empty()) doc["errors"] = std::move(errors);
  RunOutcome outcome;
  outcome.exit_code = doc.contains("errors") ? 2 : (contradiction ? 1 : 0);
  const std::filesystem::path path = dir / cfg.output.report;
  write_text(path, doc.dump(2) + "\n");
  log_line(log, "wrote " + path.string());
  outcome.report = std::move(doc);
  outcome.report_path = path.string();
  return outcome;
}

bool wants(const RunConfig& cfg, const std::string& name) {
  for (const auto& a : cfg.analyses)
    if (a == name) return true;
  return false;
}

// source verdict for a transfer: integral-backed criteria first
const Verdict* pick_source(const std::vector<Verdict>& verdicts,
                           VerdictValue value) {
  for (const char* preferred : {"tails", "p5"})
    for (const Verdict& v : verdicts)
      if (v.value == value && v.criterion == preferred) return &v;
  for (const Verdict& v : verdicts)
    if (v.value == value) return &v;
  return nullptr;
}

json domination_to_json(const DominationResult& d) {
  json j;
  j["dominates"] = d.dominates;
  j["grid_lo"] = d.grid_lo;
  j["grid_hi"] = d.grid_hi;
  j["points_per_decade"] = d.points_per_decade;
  j["note"] = d.note;
  if (!d.dominates) j["witness_u"] = d.witness_u;
  return j;
}

}  // namespace

RunOutcome run_classify(const RunConfig& cfg, const std::string& out_dir,
                        std::ostream* log) {
  validate_run_config(cfg, false);
  const std::filesystem::path dir = prepare_out_dir(out_dir);
  const ProcessFamily f = build_family(cfg.process);
  log_line(log, "family " + f.kind + " (" + to_string(f.state_mode) +
                    " mode, " + std::to_string(f.state_samples.size()) +
                    " state samples)");

  CriteriaOutcome crit = run_criteria(cfg, f, log);
  const ClassificationReport rep = safe_reconcile(crit.verdicts);

  json doc;
  doc["tool"] = "levy2d";
  doc["versions"] = versions_block();
  doc["config"] = json{{"path", cfg.source_path},
                       {"analyses", cfg.analyses},
                       {"seed", cfg.numeric.seed}};
  const json fam = family_block(cfg, f);
  doc["family"] = fam["kind"];
  doc["envelope"] = fam["envelope"];
  doc["verdict"] = to_string(rep.value);
  doc["contradiction"] = rep.contradiction;
  doc["note"] = rep.note;
  doc["criteria"] = std::move(crit.criteria);
  doc["artifacts"] = json::object();

  if (wants(cfg, "montecarlo"))
    run_montecarlo_section(cfg, f, rep.value, dir, doc, crit.errors, log);
  write_profile_csvs(cfg, f, dir, doc["artifacts"], crit.errors, log);
  log_line(log, std::string("verdict: ") + to_string(rep.value));
  return finish(std::move(doc), std::move(crit.errors), rep.contradiction, cfg,
                dir, log);
}

RunOutcome run_simulate(const RunConfig& cfg, const std::string& out_dir,
                        std::ostream* log) {
  validate_run_config(cfg, false);
  if (!wants(cfg, "montecarlo"))
    throw ConfigError(
        "simulate requires the montecarlo analysis in the config");
  const std::filesystem::path dir = prepare_out_dir(out_dir);
  const ProcessFamily f = build_family(cfg.process);
  json doc;
  doc["tool"] = "levy2d";
  doc["versions"] = versions_block();
  doc["config"] = json{{"path", cfg.source_path},
                       {"analyses", json::array({"montecarlo"})},
                       {"seed", cfg.numeric.seed}};
  doc["family"] = f.kind;
  doc["envelope"] = family_block(cfg, f)["envelope"];
  doc["verdict"] = to_string(VerdictValue::Inconclusive);
  doc["contradiction"] = false;
  doc["note"] = "sampling-only run; analytic criteria were not requested";
  doc["criteria"] = json::array();
  doc["artifacts"] = json::object();
  json errors = json::array();
  run_montecarlo_section(cfg, f, VerdictValue::Inconclusive, dir, doc, errors,
                         log);
  return finish(std::move(doc), std::move(errors), false, cfg, dir, log);
}

RunOutcome run_compare(const RunConfig& cfg_a, const RunConfig& cfg_b,
                       const std::string& out_dir, std::ostream* log) {
  validate_run_config(cfg_a, true);
  validate_run_config(cfg_b, true);
  const std::filesystem::path dir = prepare_out_dir(out_dir);
  const ProcessFamily fam_a = build_family(cfg_a.process);
  const ProcessFamily fam_b = build_family(cfg_b.process);

  CriteriaOutcome crit_a = run_criteria(cfg_a, fam_a, log);
  CriteriaOutcome crit_b = run_criteria(cfg_b, fam_b, log);
  const ClassificationReport rep_a = safe_reconcile(crit_a.verdicts);
  const ClassificationReport rep_b = safe_reconcile(crit_b.verdicts);

  json doc;
  doc["tool"] = "levy2d";
  doc["versions"] = versions_block();
  doc["config"] = json{{"path", cfg_a.source_path},
                       {"partner", cfg_b.source_path},
                       {"seed", cfg_a.numeric.seed}};
  json errors = std::move(crit_a.errors);
  for (auto& e : crit_b.errors) errors.push_back(std::move(e));

  for (const char side : {'a', 'b'}) {
    const bool is_a = side == 'a';
    json fam = family_block(is_a ? cfg_a : cfg_b, is_a ? fam_a : fam_b);
    const ClassificationReport& rep = is_a ? rep_a : rep_b;
    fam["verdict"] = to_string(rep.value);
    fam["contradiction"] = rep.contradiction;
    fam["note"] = rep.note;
    fam["criteria"] = is_a ? std::move(crit_a.criteria) : std::move(crit_b.criteria);
    doc["families"][std::string(1, side)] = std::move(fam);
  }

  const TailComparison mode = cfg_a.numeric.compare_mode == "halfplane"
                                  ? TailComparison::HalfPlaneTail
                                  : TailComparison::BallTail;
  const double u0 = cfg_a.numeric.compare_u0;
  doc["domination"] = json::object();
  doc["transfers"] = json::array();
  for (int direction = 0; direction < 2; ++direction) {
    const bool a_over_b = direction == 0;
    const std::string label = a_over_b ? "a_over_b" : "b_over_a";
    try {
      const ProcessFamily& dominating = a_over_b ? fam_a : fam_b;
      const ProcessFamily& dominated = a_over_b ? fam_b : fam_a;
      const std::vector<Verdict>& dominating_verdicts =
          a_over_b ? crit_a.verdicts : crit_b.verdicts;
      const std::vector<Verdict>& dominated_verdicts =
          a_over_b ? crit_b.verdicts : crit_a.verdicts;
      const DominationResult dom = tail_dominates(dominating, dominated, u0, mode);
      doc["domination"][label] = domination_to_json(dom);
      log_line(log, "domination " + label + ": " +
                        (dom.dominates ? "holds" : "fails"));
      if (!dom.dominates) continue;
      if (const Verdict* src =
              pick_source(dominating_verdicts, VerdictValue::Recurrent)) {
        Verdict t = transfer_classification(*src, dom,
                                            TransferDirection::RecurrenceToDominated,
                                            dominating);
        json tj = verdict_to_json(t);
        tj["target"] = a_over_b ? "b" : "a";
        tj["direction"] = "recurrence_to_dominated";
        doc["transfers"].push_back(std::move(tj));
      }
      if (const Verdict* src =
              pick_source(dominated_verdicts, VerdictValue::Transient)) {
        Verdict t = transfer_classification(*src, dom,
                                            TransferDirection::TransienceToDominating,
                                            dominating);
        json tj = verdict_to_json(t);
        tj["target"] = a_over_b ? "a" : "b";
        tj["direction"] = "transience_to_dominating";
        doc["transfers"].push_back(std::move(tj));
      }
    } catch (const std::exception& e) {
      errors.push_back(json{{"analysis", "compare." + label}, {"message", e.what()}});
    }
  }
  doc["artifacts"] = json::object();
  const bool contradiction = rep_a.contradiction || rep_b.contradiction;
  return finish(std::move(doc), std::move(errors), contradiction, cfg_a, dir,
                log);
}

RunOutcome run_perturb(const RunConfig& cfg_a, const RunConfig& cfg_b,
                       const std::string& out_dir, std::ostream* log) {
  validate_run_config(cfg_a, true);
  validate_run_config(cfg_b, true);
  const std::filesystem::path dir = prepare_out_dir(out_dir);
  const ProcessFamily fam_a = build_family(cfg_a.process);
  const ProcessFamily fam_b = build_family(cfg_b.process);

  CriteriaOutcome crit_a = run_criteria(cfg_a, fam_a, log);
  CriteriaOutcome crit_b = run_criteria(cfg_b, fam_b, log);
  const ClassificationReport rep_a = safe_reconcile(crit_a.verdicts);
  const ClassificationReport rep_b = safe_reconcile(crit_b.verdicts);

  json doc;
  doc["tool"] = "levy2d";
  doc["versions"] = versions_block();
  doc["config"] = json{{"path", cfg_a.source_path},
                       {"partner", cfg_b.source_path},
                       {"seed", cfg_a.numeric.seed}};
  json errors = std::move(crit_a.errors);
  for (auto& e : crit_b.errors) errors.push_back(std::move(e));

  for (const char side : {'a', 'b'}) {
    const bool is_a = side == 'a';
    json fam = family_block(is_a ? cfg_a : cfg_b, is_a ? fam_a : fam_b);
    const ClassificationReport& rep = is_a ? rep_a : rep_b;
    fam["verdict"] = to_string(rep.value);
    fam["contradiction"] = rep.contradiction;
    fam["note"] = rep.note;
    fam["criteria"] = is_a ? std::move(crit_a.criteria) : std::move(crit_b.criteria);
    doc["families"][std::string(1, side)] = std::move(fam);
  }

  try {
    const PlaneRotation rotation{cfg_a.numeric.perturb_rotation};
    const PerturbationReport rep = perturbation_equivalent(fam_a, fam_b, rotation);
    json pj;
    pj["distance"] = rep.distance;
    pj["constant_c"] = rep.constant_c;
    pj["diffusive_floor_gate"] = to_string(rep.diffusive_floor_gate);
    pj["conclusion"] = to_string(rep.conclusion);
    pj["note"] = rep.note;
    pj["rotation"] = cfg_a.numeric.perturb_rotation;
    doc["perturbation"] = std::move(pj);
    log_line(log, std::string("perturbation: ") + to_string(rep.conclusion));

    std::string agreement = "not decisive";
    if (rep.conclusion != EquivalenceConclusion::NotEstablished &&
        rep_a.value != VerdictValue::Inconclusive &&
        rep_b.value != VerdictValue::Inconclusive) {
      agreement = rep_a.value == rep_b.value
                      ? "consistent"
                      : "warning: equivalence established but the verdicts "
                        "differ; inspect the fits";
    }
    doc["agreement"] = agreement;
  } catch (const std::exception& e) {
    errors.push_back(json{{"analysis", "perturb"}, {"message", e.what()}});
  }
  doc["artifacts"] = json::object();
  const bool contradiction = rep_a.contradiction || rep_b.contradiction;
  return finish(std::move(doc), std::move(errors), contradiction, cfg_a, dir,
                log);
}

}  // namespace levy2d
