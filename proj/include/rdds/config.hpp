#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "rdds/road_model.hpp"
#include "rdds/scenario_synth.hpp"
#include "rdds/scoring.hpp"

namespace rdds {

/// Everything the evaluator needs, loaded from one JSON file. Scenario
/// weights are resolved to an explicit vector (parallel to `scenarios`)
/// at load time; "equal" becomes 1/n.
struct EvaluationConfig {
  VehicleFootprint footprint;
  std::vector<RoadScenario> scenarios;
  std::vector<double> scenario_weights;
  Thresholds thresholds;
  Weights weights;
  bool strict = false;
};

/// Parses and fully validates an evaluation config. Every module invariant
/// is checked here; rejection messages cite the offending field. All
/// config-file problems surface as ConfigError (or a more specific
/// config-category error such as WeightSumViolation or LengthMismatch).
EvaluationConfig load_config(const std::filesystem::path& path);

/// One fixture to generate: a SynthSpec bound to a configured scenario.
struct SynthRunSpec {
  SynthSpec spec;
  std::string scenario_id;
  std::string run_id;
};

struct SynthBatch {
  VehicleFootprint footprint;
  std::vector<RoadScenario> scenarios;
  std::vector<SynthRunSpec> runs;
};

SynthBatch load_synth_batch(const std::filesystem::path& path);

}  // namespace rdds
