#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "rdds/event_extraction.hpp"
#include "rdds/road_model.hpp"

namespace rdds {

/// Pass/fail thresholds. The fail line sits `dtre_rdw` (resp. `dtre_rka`)
/// beyond the edge for flat edges and the same distance before the edge for
/// vertical edges. Defaults follow the road-edge assessment protocol:
/// 0.2 m / 0.1 m, 0.25 points each.
///
/// Boundary semantics: a trigger exactly on the fail line scores 0 by
/// default (the protocol text defines pass and fail with strict
/// inequalities and leaves equality open; the conservative reading is
/// taken). Set `lenient_boundary` to award the boundary instead.
struct Thresholds {
  double dtre_rdw = 0.2;
  double dtre_rka = 0.1;
  double max_points_rdw = 0.25;
  double max_points_rka = 0.25;
  bool lenient_boundary = false;
};

/// Throws InvariantError unless all values are positive and the RKA fail
/// line lies inside the RDW fail line.
void validate_thresholds(const Thresholds& thresholds);

/// Criterion weights for the combined per-run score. Defaults of 1 make the
/// weighted combination coincide with the plain sum.
struct Weights {
  double w_warning = 1.0;
  double w_steering = 1.0;
};

void validate_weights(const Weights& weights);

enum class RunFlag : std::uint8_t {
  kNoWarning = 1 << 0,
  kNoSteering = 1 << 1,
  kNoDeparture = 1 << 2,
  kStrictExcursionFail = 1 << 3,
};

struct RunScore {
  double s_w = 0.0;
  double s_s = 0.0;
  double total = 0.0;
  std::uint8_t flags = 0;

  bool has_flag(RunFlag f) const noexcept { return (flags & static_cast<std::uint8_t>(f)) != 0; }

  friend bool operator==(const RunScore&, const RunScore&) = default;
};

struct ScenarioScore {
  std::string scenario_id;
  double mean = 0.0;
  std::size_t run_count = 0;
  std::vector<RunScore> per_run;
};

struct ComprehensiveScore {
  double value = 0.0;
  std::vector<std::pair<std::string, double>> scenario_weights;
};

/// Canonical coordinate of the RDW fail line: +dtre_rdw for flat edges
/// (beyond the edge), -dtre_rdw for vertical edges (before contact).
double rdw_fail_line(const RoadScenario& scenario, const Thresholds& thresholds);
double rka_fail_line(const RoadScenario& scenario, const Thresholds& thresholds);

/// Awards max_points_rdw when the warning onset occurred before the RDW
/// fail line (canonical d_rdw strictly below the line coordinate), 0 when
/// the warning was never issued or came too late. In canonical coordinates
/// the four per-side literal inequalities reduce to this single rule.
/// Throws ScenarioMismatch when the report was extracted against a
/// different scenario.
double score_rdw(const TriggerReport& report, const RoadScenario& scenario,
                 const Thresholds& thresholds);

/// RKA analogue of score_rdw, fail line at dtre_rka.
double score_rka(const TriggerReport& report, const RoadScenario& scenario,
                 const Thresholds& thresholds);

/// Combined per-run score: total = w_warning * s_w + w_steering * s_s.
/// When `strict` is set, an awarded sub-score is additionally revoked if
/// d_max_lateral passed the corresponding fail line at any point in the run
/// (the excursion reading of the protocol); revocation sets
/// kStrictExcursionFail.
RunScore score_run(const TriggerReport& report, const RoadScenario& scenario,
                   const Thresholds& thresholds, const Weights& weights, bool strict);

/// Arithmetic mean of per-run totals. Throws EmptyRunSet on no runs.
ScenarioScore score_scenario(std::vector<RunScore> runs, const std::string& scenario_id);

/// Weighted aggregation of scenario means. Weights must pair up with the
/// scenarios, be non-negative, and sum to 1 within 1e-9; nothing is
/// renormalized. Throws LengthMismatch or WeightSumViolation.
ComprehensiveScore score_comprehensive(const std::vector<ScenarioScore>& scenarios,
                                       const std::vector<double>& weights);

/// Equal weights 1/n for n scenarios.
std::vector<double> equal_weights(std::size_t n);

}  // namespace rdds
