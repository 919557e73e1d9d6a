#pragma once

#include <ostream>
#include <string>

#include <json.hpp>

#include "levy2d/config.hpp"

namespace levy2d {

// A finished run: the JSON document written to the output directory and
// the process exit code (0 ok including inconclusive, 1 contradiction,
// 2 parse or analysis error). Reports are deterministic for a fixed
// config: sorted keys, no timestamps, seeded sampling.
struct RunOutcome {
  nlohmann::json report;
  std::string report_path;
  int exit_code = 0;
};

// Runs the analytic criteria named in cfg.analyses, reconciles them,
// optionally appends the sampling estimate, writes requested CSV profiles
// and the report. log, when given, receives one progress line per step.
RunOutcome run_classify(const RunConfig& cfg, const std::string& out_dir,
                        std::ostream* log = nullptr);

// Sampling-only run: requires the montecarlo analysis in the config and
// skips analytic criteria.
RunOutcome run_simulate(const RunConfig& cfg, const std::string& out_dir,
                        std::ostream* log = nullptr);

// Classifies both families, tests tail domination in both directions on
// the first config's comparison settings, and attempts verdict transfers
// across each established domination.
RunOutcome run_compare(const RunConfig& cfg_a, const RunConfig& cfg_b,
                       const std::string& out_dir, std::ostream* log = nullptr);

// Classifies both families and reports the perturbation-distance
// equivalence between them under the configured rotation.
RunOutcome run_perturb(const RunConfig& cfg_a, const RunConfig& cfg_b,
                       const std::string& out_dir, std::ostream* log = nullptr);

}  // namespace levy2d
