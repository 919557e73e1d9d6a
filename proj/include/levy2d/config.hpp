#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "levy2d/process_family.hpp"
#include "levy2d/simulate.hpp"

namespace levy2d {

// One structured-text run description. The process block names a family
// kind and its numeric parameters; analyses select criteria; the numeric
// block carries the seed and per-analysis knobs; output names artifacts
// relative to the output directory.
struct GridBox {
  State lo = State::Zero();
  State hi = State::Zero();
  int per_side = 0;
};

struct ProcessSpec {
  std::string kind;  // brownian | stable | stable_like | radial_density |
                     // regvar | subordinated
  std::map<std::string, double> params;
  std::vector<Ring> rings;  // radial_density only
  std::optional<GridBox> grid;
};

struct MonteCarloSpec {
  double t_lo = 1.0;
  double t_hi = 1000.0;
  int probe_count = 25;
  int path_count = 10000;
  double probe_radius = 1.0;
  double small_jump_cutoff = 0.25;
};

struct NumericSpec {
  std::uint64_t seed = 0;
  MonteCarloSpec montecarlo;
  double compare_u0 = 1.0;           // domination grid start
  std::string compare_mode = "ball"; // ball | halfplane
  double perturb_rotation = 0.0;     // radians
};

struct OutputSpec {
  std::string report = "report.json";
  std::optional<std::string> symbol_csv;
  std::optional<std::string> tail_csv;
  std::optional<std::string> montecarlo_csv;
};

struct RunConfig {
  ProcessSpec process;
  std::vector<std::string> analyses;
  NumericSpec numeric;
  OutputSpec output;
  std::string source_path;
};

// Parses and validates one config file. Unknown keys, missing fields, and
// type mismatches raise ConfigError naming the field and source line.
RunConfig load_run_config(const std::string& path);

// second_block: compare and perturb runs supply the partner family in a
// separate config, so their analysis names are only legal there.
void validate_run_config(const RunConfig& cfg, bool second_block_present);

// Instantiates the family the process block describes.
ProcessFamily build_family(const ProcessSpec& spec);

// Simulation settings assembled from the numeric block and the seed.
SimConfig build_sim_config(const RunConfig& cfg);

}  // namespace levy2d
