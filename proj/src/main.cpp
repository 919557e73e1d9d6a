#include <CLI11.hpp>

#include <cstdint>
#include <iostream>
#include <string>

#include "levy2d/config.hpp"
#include "levy2d/errors.hpp"
#include "levy2d/report.hpp"

namespace {

using namespace levy2d;

void print_summary(const RunOutcome& outcome) {
  const nlohmann::json& doc = outcome.report;
  if (doc.contains("verdict"))
    std::cout << "verdict: " << doc["verdict"].get<std::string>() << "\n";
  if (doc.contains("montecarlo"))
    std::cout << "empirical: " << doc["montecarlo"]["verdict"].get<std::string>()
              << " (kappa " << doc["montecarlo"]["kappa"].get<double>() << ")\n";
  if (doc.contains("families"))
    for (const auto& side : {"a", "b"})
      std::cout << "family " << side << ": "
                << doc["families"][side]["verdict"].get<std::string>() << "\n";
  if (doc.contains("domination"))
    for (const auto& [label, dom] : doc["domination"].items())
      std::cout << "domination " << label << ": "
                << (dom["dominates"].get<bool>() ? "holds" : "fails") << "\n";
  if (doc.contains("transfers"))
    for (const auto& t : doc["transfers"])
      std::cout << "transfer to " << t["target"].get<std::string>() << ": "
                << t["verdict"].get<std::string>() << "\n";
  if (doc.contains("perturbation"))
    std::cout << "equivalence: "
              << doc["perturbation"]["conclusion"].get<std::string>() << "\n";
  if (doc.contains("errors"))
    std::cout << "errors: " << doc["errors"].size() << " (see report)\n";
  std::cout << "report: " << outcome.report_path << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "recurrence and transience analysis of planar jump processes with "
      "radial symbols"};
  app.require_subcommand(1);

  std::string out_dir = ".";
  bool verbose = false;
  std::uint64_t seed_override = 0;
  bool seed_set = false;
  std::string config_a, config_b;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--out", out_dir, "output directory")
        ->capture_default_str();
    cmd->add_flag("--verbose", verbose, "log progress to stderr");
    cmd->add_option("--seed", seed_override, "override the config seed")
        ->each([&](const std::string&) { seed_set = true; });
  };

  CLI::App* classify = app.add_subcommand(
      "classify", "run the analytic criteria from one config");
  classify->add_option("config", config_a, "run config file")->required();
  add_common(classify);

  CLI::App* simulate = app.add_subcommand(
      "simulate", "estimate the occupation exponent by sampling");
  simulate->add_option("config", config_a, "run config file")->required();
  add_common(simulate);

  CLI::App* compare = app.add_subcommand(
      "compare", "tail domination and verdict transfer between two families");
  compare->add_option("config_a", config_a, "first run config")->required();
  compare->add_option("config_b", config_b, "second run config")->required();
  add_common(compare);

  CLI::App* perturb = app.add_subcommand(
      "perturb", "perturbation-distance equivalence between two families");
  perturb->add_option("config_a", config_a, "first run config")->required();
  perturb->add_option("config_b", config_b, "second run config")->required();
  add_common(perturb);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    auto load = [&](const std::string& path) {
      RunConfig cfg = load_run_config(path);
      if (seed_set) cfg.numeric.seed = seed_override;
      return cfg;
    };
    std::ostream* log = verbose ? &std::cerr : nullptr;
    RunOutcome outcome;
    if (app.got_subcommand(classify))
      outcome = run_classify(load(config_a), out_dir, log);
    else if (app.got_subcommand(simulate))
      outcome = run_simulate(load(config_a), out_dir, log);
    else if (app.got_subcommand(compare))
      outcome = run_compare(load(config_a), load(config_b), out_dir, log);
    else
      outcome = run_perturb(load(config_a), load(config_b), out_dir, log);
    print_summary(outcome);
    return outcome.exit_code;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
