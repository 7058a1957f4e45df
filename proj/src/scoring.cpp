#include "rdds/scoring.hpp"

#include <cmath>
#include <sstream>

namespace rdds {

namespace {

constexpr double kWeightSumTolerance = 1e-9;

void check_scenario(const TriggerReport& report, const RoadScenario& scenario) {
  if (report.scenario_id != scenario.scenario_id) {
    std::ostringstream os;
    os << "report extracted against scenario '" << report.scenario_id
       << "' but scored against '" << scenario.scenario_id << "'";
    throw ScenarioMismatch(os.str());
  }
}

bool before_line(double value, double line, bool lenient) {
  return lenient ? value <= line : value < line;
}

double score_trigger(const std::optional<double>& onset, double line, double max_points,
                     bool lenient) {
  if (!onset) return 0.0;
  return before_line(*onset, line, lenient) ? max_points : 0.0;
}

}  // namespace

void validate_thresholds(const Thresholds& t) {
  auto positive = [](double v, const char* name) {
    if (!std::isfinite(v) || v <= 0.0) {
      throw InvariantError(std::string("thresholds.") + name + " must be positive and finite");
    }
  };
  positive(t.dtre_rdw, "dtre_rdw");
  positive(t.dtre_rka, "dtre_rka");
  positive(t.max_points_rdw, "max_points_rdw");
  positive(t.max_points_rka, "max_points_rka");
  if (!(t.dtre_rka < t.dtre_rdw)) {
    throw InvariantError("thresholds.dtre_rka must be less than dtre_rdw (RKA fail line inside RDW)");
  }
}

void validate_weights(const Weights& w) {
  if (!std::isfinite(w.w_warning) || w.w_warning < 0.0 || !std::isfinite(w.w_steering) ||
      w.w_steering < 0.0) {
    throw InvariantError("criterion weights must be non-negative and finite");
  }
}

double rdw_fail_line(const RoadScenario& scenario, const Thresholds& thresholds) {
  return scenario.edge_kind == EdgeKind::kFlat ? thresholds.dtre_rdw : -thresholds.dtre_rdw;
}

double rka_fail_line(const RoadScenario& scenario, const Thresholds& thresholds) {
  return scenario.edge_kind == EdgeKind::kFlat ? thresholds.dtre_rka : -thresholds.dtre_rka;
}

double score_rdw(const TriggerReport& report, const RoadScenario& scenario,
                 const Thresholds& thresholds) {
  check_scenario(report, scenario);
  return score_trigger(report.d_rdw, rdw_fail_line(scenario, thresholds),
                       thresholds.max_points_rdw, thresholds.lenient_boundary);
}

double score_rka(const TriggerReport& report, const RoadScenario& scenario,
                 const Thresholds& thresholds) {
  check_scenario(report, scenario);
  return score_trigger(report.d_rka, rka_fail_line(scenario, thresholds),
                       thresholds.max_points_rka, thresholds.lenient_boundary);
}

RunScore score_run(const TriggerReport& report, const RoadScenario& scenario,
                   const Thresholds& thresholds, const Weights& weights, bool strict) {
  RunScore score;
  score.s_w = score_rdw(report, scenario, thresholds);
  score.s_s = score_rka(report, scenario, thresholds);

  if (!report.d_rdw) score.flags |= static_cast<std::uint8_t>(RunFlag::kNoWarning);
  if (!report.d_rka) score.flags |= static_cast<std::uint8_t>(RunFlag::kNoSteering);
  if (!report.edge_cross_time) score.flags |= static_cast<std::uint8_t>(RunFlag::kNoDeparture);

  if (strict) {
    const bool lenient = thresholds.lenient_boundary;
    if (score.s_w > 0.0 &&
        !before_line(report.d_max_lateral, rdw_fail_line(scenario, thresholds), lenient)) {
      score.s_w = 0.0;
      score.flags |= static_cast<std::uint8_t>(RunFlag::kStrictExcursionFail);
    }
    if (score.s_s > 0.0 &&
        !before_line(report.d_max_lateral, rka_fail_line(scenario, thresholds), lenient)) {
      score.s_s = 0.0;
      score.flags |= static_cast<std::uint8_t>(RunFlag::kStrictExcursionFail);
    }
  }

  score.total = weights.w_warning * score.s_w + weights.w_steering * score.s_s;
  return score;
}

ScenarioScore score_scenario(std::vector<RunScore> runs, const std::string& scenario_id) {
  if (runs.empty()) {
    throw EmptyRunSet("scenario '" + scenario_id + "' has no runs to average");
  }
  double sum = 0.0;
  for (const RunScore& r : runs) sum += r.total;

  ScenarioScore score;
  score.scenario_id = scenario_id;
  score.run_count = runs.size();
  score.mean = sum / static_cast<double>(runs.size());
  score.per_run = std::move(runs);
  return score;
}

ComprehensiveScore score_comprehensive(const std::vector<ScenarioScore>& scenarios,
                                       const std::vector<double>& weights) {
  if (scenarios.size() != weights.size()) {
    std::ostringstream os;
    os << "got " << scenarios.size() << " scenario scores but " << weights.size() << " weights";
    throw LengthMismatch(os.str());
  }
  double sum = 0.0;
  for (double w : weights) {
    if (!std::isfinite(w) || w < 0.0) {
      throw InvariantError("scenario weights must be non-negative and finite");
    }
    sum += w;
  }
  if (std::fabs(sum - 1.0) > kWeightSumTolerance) {
    std::ostringstream os;
    os << "scenario weights sum to " << sum << "; must be 1 within " << kWeightSumTolerance;
    throw WeightSumViolation(os.str());
  }

  ComprehensiveScore score;
  score.scenario_weights.reserve(scenarios.size());
  double value = 0.0;
  for (std::size_t i = 0; i < scenarios.size(); ++i) {
    value += weights[i] * scenarios[i].mean;
    score.scenario_weights.emplace_back(scenarios[i].scenario_id, weights[i]);
  }
  score.value = value;
  return score;
}

std::vector<double> equal_weights(std::size_t n) {
  if (n == 0) throw EmptyRunSet("cannot build equal weights for zero scenarios");
  return std::vector<double>(n, 1.0 / static_cast<double>(n));
}

}  // namespace rdds
