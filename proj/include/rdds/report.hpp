#pragma once

#include <filesystem>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "rdds/config.hpp"
#include "rdds/event_extraction.hpp"
#include "rdds/scoring.hpp"

namespace rdds {

/// One evaluated run, reduced to what the renderers need.
struct RunResult {
  std::string run_id;
  std::string scenario_id;
  TriggerReport report;
  RunScore score;
};

struct EvaluationResult {
  std::vector<RunResult> runs;           // scenario config order, run_id order within
  std::vector<ScenarioScore> scenarios;  // scenario config order
  ComprehensiveScore comprehensive;
};

/// System-response presence class for a run: 1 = warning and steering both
/// issued, 2 = warning only, 3 = steering only, 4 = neither.
int response_case(const TriggerReport& report);

/// Incremental evaluation with bounded memory: each run is reduced to a
/// TriggerReport and RunScore as it arrives; samples are not retained.
class Evaluator {
 public:
  explicit Evaluator(EvaluationConfig config);

  /// Validates, extracts, and scores one run. Throws UnknownScenario when
  /// the run references an unconfigured scenario and InvariantError on a
  /// duplicate run id.
  void add_run(const TestRun& run);

  /// Aggregates scenario means and the comprehensive score. Throws
  /// EmptyRunSet when a configured scenario received no runs.
  EvaluationResult finish() const;

  const EvaluationConfig& config() const noexcept { return config_; }

 private:
  EvaluationConfig config_;
  std::map<std::string, std::size_t> scenario_index_;
  std::vector<std::vector<RunResult>> per_scenario_;
  std::set<std::string> seen_run_ids_;
};

EvaluationResult evaluate(const EvaluationConfig& config, const std::vector<TestRun>& runs);

/// Deterministic JSON report: fixed key order, every float rounded to 9
/// significant digits, no timestamps. Same inputs give identical bytes.
std::string render_report_json(const EvaluationResult& result, const EvaluationConfig& config);

/// Plain-text per-run table plus scenario and comprehensive summary lines.
std::string render_human_table(const EvaluationResult& result);

/// Writes `<scenario_id>__<run_id>.csv` into `dir` with columns
/// t,outermost_lateral,warning_active,rka_active for external plotting.
/// Returns the path written.
std::filesystem::path write_series_csv(const std::filesystem::path& dir, const TestRun& run,
                                       const VehicleFootprint& footprint,
                                       const RoadScenario& scenario);

}  // namespace rdds
