#include "levy2d/config.hpp"

#include <yaml-cpp/yaml.h>

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

#include "levy2d/errors.hpp"

namespace levy2d {

namespace {

const std::set<std::string> kKinds = {"brownian",       "stable",
                                      "stable_like",    "radial_density",
                                      "regvar",         "subordinated"};
const std::set<std::string> kAnalyses = {"chung_fuchs", "tails",   "p5",
                                         "regvar",      "perturb", "compare",
                                         "montecarlo"};

[[noreturn]] void fail(const YAML::Node& node, const std::string& field,
                       const std::string& what) {
  std::ostringstream msg;
  msg << field << ": " << what;
  if (node.IsDefined() && node.Mark().line >= 0)
    msg << " (line " << node.Mark().line + 1 << ")";
  throw ConfigError(msg.str());
}

double as_number(const YAML::Node& node, const std::string& field) {
  if (!node.IsDefined() || node.IsNull()) fail(node, field, "missing value");
  try {
    return node.as<double>();
  } catch (const YAML::Exception&) {
    fail(node, field, "expected a number");
  }
}

int as_int(const YAML::Node& node, const std::string& field) {
  if (!node.IsDefined() || node.IsNull()) fail(node, field, "missing value");
  try {
    return node.as<int>();
  } catch (const YAML::Exception&) {
    fail(node, field, "expected an integer");
  }
}

std::string as_text(const YAML::Node& node, const std::string& field) {
  if (!node.IsDefined() || node.IsNull()) fail(node, field, "missing value");
  try {
    return node.as<std::string>();
  } catch (const YAML::Exception&) {
    fail(node, field, "expected a string");
  }
}

State as_point(const YAML::Node& node, const std::string& field) {
  if (!node.IsSequence() || node.size() != 2)
    fail(node, field, "expected a two-element sequence");
  return State(as_number(node[0], field + "[0]"),
               as_number(node[1], field + "[1]"));
}

void reject_unknown(const YAML::Node& map, const std::set<std::string>& known,
                    const std::string& where) {
  for (const auto& kv : map) {
    const std::string key = kv.first.as<std::string>();
    if (!known.count(key)) fail(kv.second, where + "." + key, "unknown key");
  }
}

ProcessSpec parse_process(const YAML::Node& node) {
  if (!node.IsDefined() || !node.IsMap())
    throw ConfigError("process: block is missing or not a map");
  reject_unknown(node,
                 {"kind", "alpha", "beta", "c", "alpha_lo", "alpha_hi",
                  "beta_lo", "beta_hi", "power", "log_exponent", "scale",
                  "floor", "coefficient", "rings", "grid"},
                 "process");
  ProcessSpec spec;
  spec.kind = as_text(node["kind"], "process.kind");
  if (!kKinds.count(spec.kind))
    fail(node["kind"], "process.kind", "unknown family kind '" + spec.kind + "'");
  for (const char* key : {"alpha", "beta", "c", "alpha_lo", "alpha_hi",
                          "beta_lo", "beta_hi", "power", "log_exponent",
                          "scale", "floor", "coefficient"}) {
    const YAML::Node v = node[key];
    if (v.IsDefined() && !v.IsNull())
      spec.params[key] = as_number(v, std::string("process.") + key);
  }
  if (const YAML::Node rings = node["rings"]; rings.IsDefined()) {
    if (!rings.IsSequence()) fail(rings, "process.rings", "expected a sequence");
    for (std::size_t i = 0; i < rings.size(); ++i) {
      std::ostringstream where;
      where << "process.rings[" << i << "]";
      const YAML::Node r = rings[i];
      if (!r.IsMap()) fail(r, where.str(), "expected {radius, mass}");
      reject_unknown(r, {"radius", "mass"}, where.str());
      spec.rings.push_back(Ring{as_number(r["radius"], where.str() + ".radius"),
                                as_number(r["mass"], where.str() + ".mass")});
    }
  }
  if (const YAML::Node grid = node["grid"]; grid.IsDefined()) {
    if (!grid.IsMap()) fail(grid, "process.grid", "expected a map");
    reject_unknown(grid, {"lo", "hi", "per_side"}, "process.grid");
    GridBox box;
    box.lo = as_point(grid["lo"], "process.grid.lo");
    box.hi = as_point(grid["hi"], "process.grid.hi");
    box.per_side = as_int(grid["per_side"], "process.grid.per_side");
    spec.grid = box;
  }
  return spec;
}

MonteCarloSpec parse_montecarlo(const YAML::Node& node) {
  MonteCarloSpec mc;
  if (!node.IsDefined()) return mc;
  if (!node.IsMap()) throw ConfigError("numeric.montecarlo: expected a map");
  reject_unknown(node,
                 {"t_lo", "t_hi", "probe_count", "path_count", "probe_radius",
                  "small_jump_cutoff"},
                 "numeric.montecarlo");
  if (node["t_lo"].IsDefined())
    mc.t_lo = as_number(node["t_lo"], "numeric.montecarlo.t_lo");
  if (node["t_hi"].IsDefined())
    mc.t_hi = as_number(node["t_hi"], "numeric.montecarlo.t_hi");
  if (node["probe_count"].IsDefined())
    mc.probe_count = as_int(node["probe_count"], "numeric.montecarlo.probe_count");
  if (node["path_count"].IsDefined())
    mc.path_count = as_int(node["path_count"], "numeric.montecarlo.path_count");
  if (node["probe_radius"].IsDefined())
    mc.probe_radius =
        as_number(node["probe_radius"], "numeric.montecarlo.probe_radius");
  if (node["small_jump_cutoff"].IsDefined())
    mc.small_jump_cutoff = as_number(node["small_jump_cutoff"],
                                     "numeric.montecarlo.small_jump_cutoff");
  return mc;
}

NumericSpec parse_numeric(const YAML::Node& node) {
  NumericSpec num;
  if (!node.IsDefined()) return num;
  if (!node.IsMap()) throw ConfigError("numeric: expected a map");
  reject_unknown(node,
                 {"seed", "montecarlo", "compare_u0", "compare_mode",
                  "perturb_rotation"},
                 "numeric");
  if (node["seed"].IsDefined()) {
    try {
      num.seed = node["seed"].as<std::uint64_t>();
    } catch (const YAML::Exception&) {
      fail(node["seed"], "numeric.seed", "expected a nonnegative integer");
    }
  }
  num.montecarlo = parse_montecarlo(node["montecarlo"]);
  if (node["compare_u0"].IsDefined())
    num.compare_u0 = as_number(node["compare_u0"], "numeric.compare_u0");
  if (node["compare_mode"].IsDefined()) {
    num.compare_mode = as_text(node["compare_mode"], "numeric.compare_mode");
    if (num.compare_mode != "ball" && num.compare_mode != "halfplane")
      fail(node["compare_mode"], "numeric.compare_mode",
           "expected 'ball' or 'halfplane'");
  }
  if (node["perturb_rotation"].IsDefined())
    num.perturb_rotation =
        as_number(node["perturb_rotation"], "numeric.perturb_rotation");
  return num;
}

OutputSpec parse_output(const YAML::Node& node) {
  OutputSpec out;
  if (!node.IsDefined()) return out;
  if (!node.IsMap()) throw ConfigError("output: expected a map");
  reject_unknown(node, {"report", "symbol_csv", "tail_csv", "montecarlo_csv"},
                 "output");
  if (node["report"].IsDefined())
    out.report = as_text(node["report"], "output.report");
  if (node["symbol_csv"].IsDefined())
    out.symbol_csv = as_text(node["symbol_csv"], "output.symbol_csv");
  if (node["tail_csv"].IsDefined())
    out.tail_csv = as_text(node["tail_csv"], "output.tail_csv");
  if (node["montecarlo_csv"].IsDefined())
    out.montecarlo_csv = as_text(node["montecarlo_csv"], "output.montecarlo_csv");
  return out;
}

double param(const ProcessSpec& spec, const std::string& key, double fallback) {
  const auto it = spec.params.find(key);
  return it == spec.params.end() ? fallback : it->second;
}

double need_param(const ProcessSpec& spec, const std::string& key) {
  const auto it = spec.params.find(key);
  if (it == spec.params.end())
    throw ConfigError("process." + key + ": required for kind '" + spec.kind +
                      "'");
  return it->second;
}

void forbid_params(const ProcessSpec& spec,
                   const std::set<std::string>& allowed) {
  for (const auto& kv : spec.params) {
    if (!allowed.count(kv.first))
      throw ConfigError("process." + kv.first + ": not a parameter of kind '" +
                        spec.kind + "'");
  }
  if (!spec.rings.empty() && !allowed.count("rings"))
    throw ConfigError("process.rings: not a parameter of kind '" + spec.kind +
                      "'");
}

}  // namespace

RunConfig load_run_config(const std::string& path) {
  YAML::Node root;
  try {
    root = YAML::LoadFile(path);
  } catch (const YAML::BadFile&) {
    throw ConfigError("cannot open config file '" + path + "'");
  } catch (const YAML::ParserException& e) {
    std::ostringstream msg;
    msg << path << ": parse error at line " << e.mark.line + 1 << ", column "
        << e.mark.column + 1 << ": " << e.msg;
    throw ConfigError(msg.str());
  }
  if (!root.IsMap()) throw ConfigError(path + ": top level must be a map");
  reject_unknown(root, {"process", "analyses", "numeric", "output"}, path);

  RunConfig cfg;
  cfg.source_path = path;
  cfg.process = parse_process(root["process"]);
  const YAML::Node analyses = root["analyses"];
  if (!analyses.IsDefined() || !analyses.IsSequence())
    throw ConfigError("analyses: expected a sequence of analysis names");
  for (const auto& item : analyses)
    cfg.analyses.push_back(as_text(item, "analyses[]"));
  cfg.numeric = parse_numeric(root["numeric"]);
  cfg.output = parse_output(root["output"]);
  return cfg;
}

void validate_run_config(const RunConfig& cfg, bool second_block_present) {
  if (cfg.analyses.empty())
    throw ConfigError("analyses: at least one analysis must be requested");
  std::set<std::string> seen;
  for (const std::string& name : cfg.analyses) {
    if (!kAnalyses.count(name))
      throw ConfigError("analyses: unknown analysis '" + name + "'");
    if (!seen.insert(name).second)
      throw ConfigError("analyses: '" + name + "' listed twice");
    if ((name == "compare" || name == "perturb") && !second_block_present)
      throw ConfigError("analyses: '" + name +
                        "' needs a second process config (use the " + name +
                        " subcommand)");
  }
  const MonteCarloSpec& mc = cfg.numeric.montecarlo;
  if (seen.count("montecarlo")) {
    if (!(mc.t_lo > 0.0 && mc.t_lo < mc.t_hi))
      throw ConfigError("numeric.montecarlo: needs 0 < t_lo < t_hi");
    if (mc.probe_count < 2)
      throw ConfigError("numeric.montecarlo.probe_count: at least 2");
    if (mc.path_count < 1)
      throw ConfigError("numeric.montecarlo.path_count: at least 1");
    if (!(mc.probe_radius > 0.0))
      throw ConfigError("numeric.montecarlo.probe_radius: must be positive");
    if (!(mc.small_jump_cutoff > 0.0 && mc.small_jump_cutoff < 1.0))
      throw ConfigError(
          "numeric.montecarlo.small_jump_cutoff: must lie in (0, 1)");
  }
  if (seen.count("compare") && !(cfg.numeric.compare_u0 >= 0.0))
    throw ConfigError("numeric.compare_u0: must be nonnegative");
  build_family(cfg.process);  // parameter errors surface at load time
}

ProcessFamily build_family(const ProcessSpec& spec) {
  ProcessFamily f;
  if (spec.kind == "brownian") {
    forbid_params(spec, {"c"});
    f = make_brownian(need_param(spec, "c"));
  } else if (spec.kind == "stable") {
    forbid_params(spec, {"alpha", "beta"});
    f = make_stable(need_param(spec, "alpha"), param(spec, "beta", 1.0));
  } else if (spec.kind == "stable_like") {
    forbid_params(spec, {"alpha_lo", "alpha_hi", "beta_lo", "beta_hi"});
    const double blo = param(spec, "beta_lo", 1.0);
    f = make_stable_like(need_param(spec, "alpha_lo"),
                         need_param(spec, "alpha_hi"), blo,
                         param(spec, "beta_hi", blo));
  } else if (spec.kind == "regvar") {
    forbid_params(spec, {"power", "log_exponent", "scale", "floor"});
    f = make_regvar(need_param(spec, "power"), param(spec, "log_exponent", 0.0),
                    param(spec, "scale", 1.0),
                    param(spec, "floor", 2.718281828459045));
  } else if (spec.kind == "subordinated") {
    forbid_params(spec, {"alpha_lo", "alpha_hi", "c"});
    f = make_subordinated(need_param(spec, "alpha_lo"),
                          need_param(spec, "alpha_hi"), param(spec, "c", 1.0));
  } else if (spec.kind == "radial_density") {
    forbid_params(spec, {"coefficient", "power", "floor", "c", "rings"});
    const double coeff = param(spec, "coefficient", 0.0);
    const double floor = param(spec, "floor", 0.0);
    const double c = param(spec, "c", 0.0);
    if (coeff < 0.0)
      throw ConfigError("process.coefficient: must be nonnegative");
    if (floor < 0.0) throw ConfigError("process.floor: must be nonnegative");
    if (coeff == 0.0 && spec.rings.empty() && c <= 0.0)
      throw ConfigError(
          "process: radial_density needs a density coefficient, rings, or "
          "diffusion");
    RadialDensity density;
    if (coeff > 0.0) {
      const double power = need_param(spec, "power");
      if (!(power < -2.0))
        throw ConfigError(
            "process.power: must be below -2 so the tail integrates against "
            "u^3");
      if (floor == 0.0 && !(power > -4.0))
        throw ConfigError(
            "process.power: must exceed -4 when the support reaches the "
            "origin");
      density.density = [coeff, power](const State&, double u) {
        return coeff * std::pow(u, power);
      };
      density.support_floor = floor;
      density.decreasing_beyond = std::max(floor, 1e-12);
      if (floor > 1.0) density.declared_tail = DeclaredTail{power, 0.0};
    }
    for (const Ring& r : spec.rings) {
      if (!(r.radius > 0.0))
        throw ConfigError("process.rings: radius must be positive");
      if (!(r.mass > 0.0))
        throw ConfigError("process.rings: mass must be positive");
    }
    f = make_radial_family(density, c);
    if (!spec.rings.empty()) {
      double enclosing = 0.0;
      for (const Ring& r : spec.rings) enclosing = std::max(enclosing, r.radius);
      f.triplet.finite_part = FinitePart{enclosing, spec.rings};
    }
  } else {
    throw ConfigError("process.kind: unknown family kind '" + spec.kind + "'");
  }
  if (spec.grid) {
    if (spec.grid->per_side < 2)
      throw ConfigError("process.grid.per_side: at least 2");
    if (!(spec.grid->lo.x() < spec.grid->hi.x() &&
          spec.grid->lo.y() < spec.grid->hi.y()))
      throw ConfigError("process.grid: lo must be componentwise below hi");
    f = with_grid(std::move(f), spec.grid->lo, spec.grid->hi,
                  spec.grid->per_side);
  }
  return f;
}

SimConfig build_sim_config(const RunConfig& cfg) {
  const MonteCarloSpec& mc = cfg.numeric.montecarlo;
  SimConfig sim = make_sim_config(mc.t_lo, mc.t_hi, mc.probe_count,
                                  mc.path_count, cfg.numeric.seed,
                                  mc.probe_radius, mc.small_jump_cutoff);
  return sim;
}

}  // namespace levy2d
