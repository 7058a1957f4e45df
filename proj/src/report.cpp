#include "rdds/report.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "rdds/errors.hpp"
#include "rdds/geometry_metrics.hpp"
#include "rdds/version.hpp"

namespace rdds {

namespace {

using nlohmann::ordered_json;

// Rounds to 9 significant digits so report bytes are a pure function of the
// values, independent of how the doubles were produced. -0 collapses to +0.
double round_sig9(double value) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.9g", value);
  const double rounded = std::strtod(buf, nullptr);
  return rounded == 0.0 ? 0.0 : rounded;
}

ordered_json opt_number(const std::optional<double>& v) {
  return v ? ordered_json(round_sig9(*v)) : ordered_json(nullptr);
}

const char* edge_name(EdgeKind kind) {
  return kind == EdgeKind::kFlat ? "flat" : "vertical";
}

const char* side_name(DepartureSide side) {
  return side == DepartureSide::kRight ? "right" : "left";
}

std::vector<std::string> flag_names(const RunScore& score) {
  std::vector<std::string> names;
  if (score.has_flag(RunFlag::kNoWarning)) names.push_back("no_warning");
  if (score.has_flag(RunFlag::kNoSteering)) names.push_back("no_steering");
  if (score.has_flag(RunFlag::kNoDeparture)) names.push_back("no_departure");
  if (score.has_flag(RunFlag::kStrictExcursionFail)) names.push_back("strict_excursion_fail");
  return names;
}

std::string format_double(double value) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, res.ptr);
}

std::string fixed3(const std::optional<double>& v) {
  if (!v) return "-";
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.3f", *v);
  return buf;
}

}  // namespace

int response_case(const TriggerReport& report) {
  const bool warned = report.d_rdw.has_value();
  const bool steered = report.d_rka.has_value();
  if (warned && steered) return 1;
  if (warned) return 2;
  if (steered) return 3;
  return 4;
}

Evaluator::Evaluator(EvaluationConfig config) : config_(std::move(config)) {
  validate_thresholds(config_.thresholds);
  validate_weights(config_.weights);
  if (config_.scenarios.empty()) throw ConfigError("no scenarios configured");
  if (config_.scenario_weights.size() != config_.scenarios.size()) {
    std::ostringstream os;
    os << "scenario weight count " << config_.scenario_weights.size() << " does not match "
       << config_.scenarios.size() << " scenarios";
    throw LengthMismatch(os.str());
  }
  for (std::size_t i = 0; i < config_.scenarios.size(); ++i) {
    if (!scenario_index_.emplace(config_.scenarios[i].scenario_id, i).second) {
      throw ConfigError("duplicate scenario id '" + config_.scenarios[i].scenario_id + "'");
    }
  }
  per_scenario_.resize(config_.scenarios.size());
}

void Evaluator::add_run(const TestRun& run) {
  const auto it = scenario_index_.find(run.scenario_ref);
  if (it == scenario_index_.end()) {
    throw UnknownScenario("run '" + run.run_id + "' references unknown scenario '" +
                          run.scenario_ref + "'");
  }
  if (!seen_run_ids_.insert(run.run_id).second) {
    throw InvariantError("duplicate run id '" + run.run_id + "'");
  }

  validate_run(run);
  const RoadScenario& scenario = config_.scenarios[it->second];
  RunResult result;
  result.run_id = run.run_id;
  result.scenario_id = scenario.scenario_id;
  result.report = extract(run, config_.footprint, scenario);
  result.score =
      score_run(result.report, scenario, config_.thresholds, config_.weights, config_.strict);
  per_scenario_[it->second].push_back(std::move(result));
}

EvaluationResult Evaluator::finish() const {
  EvaluationResult out;
  std::vector<ScenarioScore> scenario_scores;

  for (std::size_t i = 0; i < config_.scenarios.size(); ++i) {
    const RoadScenario& scenario = config_.scenarios[i];
    if (per_scenario_[i].empty()) {
      throw EmptyRunSet("scenario '" + scenario.scenario_id + "' has no runs");
    }
    std::vector<RunResult> runs = per_scenario_[i];
    std::sort(runs.begin(), runs.end(),
              [](const RunResult& a, const RunResult& b) { return a.run_id < b.run_id; });

    std::vector<RunScore> scores;
    scores.reserve(runs.size());
    for (const RunResult& r : runs) scores.push_back(r.score);
    scenario_scores.push_back(score_scenario(std::move(scores), scenario.scenario_id));

    for (RunResult& r : runs) out.runs.push_back(std::move(r));
  }

  out.comprehensive = score_comprehensive(scenario_scores, config_.scenario_weights);
  out.scenarios = std::move(scenario_scores);
  return out;
}

EvaluationResult evaluate(const EvaluationConfig& config, const std::vector<TestRun>& runs) {
  Evaluator evaluator(config);
  for (const TestRun& run : runs) evaluator.add_run(run);
  return evaluator.finish();
}

std::string render_report_json(const EvaluationResult& result, const EvaluationConfig& config) {
  ordered_json doc;
  doc["tool"] = {{"name", kToolName}, {"version", kToolVersion}};
  doc["thresholds"] = {{"dtre_rdw", round_sig9(config.thresholds.dtre_rdw)},
                       {"dtre_rka", round_sig9(config.thresholds.dtre_rka)},
                       {"max_points_rdw", round_sig9(config.thresholds.max_points_rdw)},
                       {"max_points_rka", round_sig9(config.thresholds.max_points_rka)},
                       {"lenient_boundary", config.thresholds.lenient_boundary}};
  doc["weights"] = {{"warning", round_sig9(config.weights.w_warning)},
                    {"steering", round_sig9(config.weights.w_steering)}};
  doc["strict"] = config.strict;

  doc["scenarios"] = ordered_json::array();
  for (std::size_t i = 0; i < config.scenarios.size(); ++i) {
    const RoadScenario& scenario = config.scenarios[i];
    const ScenarioScore& score = result.scenarios[i];

    ordered_json sj;
    sj["id"] = scenario.scenario_id;
    sj["edge"] = edge_name(scenario.edge_kind);
    sj["side"] = side_name(scenario.side);
    sj["edge_offset"] = round_sig9(scenario.edge_offset);
    sj["weight"] = round_sig9(config.scenario_weights[i]);
    sj["score"] = {{"mean", round_sig9(score.mean)},
                   {"run_count", static_cast<std::uint64_t>(score.run_count)}};

    sj["runs"] = ordered_json::array();
    for (const RunResult& run : result.runs) {
      if (run.scenario_id != scenario.scenario_id) continue;
      const TriggerReport& rep = run.report;

      ordered_json rj;
      rj["run_id"] = run.run_id;
      rj["case"] = response_case(rep);
      rj["canonical"] = {{"d_rdw", opt_number(rep.d_rdw)},
                         {"d_rka", opt_number(rep.d_rka)},
                         {"d_max_lateral", round_sig9(rep.d_max_lateral)},
                         {"edge_cross_time", opt_number(rep.edge_cross_time)}};

      auto literal = [&](const std::optional<double>& v) -> ordered_json {
        return v ? ordered_json(round_sig9(canonical_to_literal(*v, scenario)))
                 : ordered_json(nullptr);
      };
      rj["literal"] = {{"d_rdw", literal(rep.d_rdw)},
                       {"d_rka", literal(rep.d_rka)},
                       {"d_max_lateral", round_sig9(canonical_to_literal(rep.d_max_lateral, scenario))}};

      rj["score"] = {{"warning", round_sig9(run.score.s_w)},
                     {"steering", round_sig9(run.score.s_s)},
                     {"total", round_sig9(run.score.total)}};
      rj["flags"] = flag_names(run.score);
      sj["runs"].push_back(std::move(rj));
    }

    doc["scenarios"].push_back(std::move(sj));
  }

  doc["comprehensive"] = ordered_json::object();
  doc["comprehensive"]["value"] = round_sig9(result.comprehensive.value);
  doc["comprehensive"]["scenario_weights"] = ordered_json::array();
  for (const auto& [id, weight] : result.comprehensive.scenario_weights) {
    doc["comprehensive"]["scenario_weights"].push_back(
        {{"id", id}, {"weight", round_sig9(weight)}});
  }

  return doc.dump(2) + "\n";
}

std::string render_human_table(const EvaluationResult& result) {
  std::ostringstream os;
  char line[256];
  std::snprintf(line, sizeof(line), "%-20s %-16s %4s %9s %9s %9s %6s %6s %6s\n", "scenario", "run",
                "case", "d_rdw", "d_rka", "d_max", "s_w", "s_s", "total");
  os << line;

  for (const RunResult& run : result.runs) {
    std::snprintf(line, sizeof(line), "%-20s %-16s %4d %9s %9s %9.3f %6.2f %6.2f %6.2f\n",
                  run.scenario_id.c_str(), run.run_id.c_str(), response_case(run.report),
                  fixed3(run.report.d_rdw).c_str(), fixed3(run.report.d_rka).c_str(),
                  run.report.d_max_lateral, run.score.s_w, run.score.s_s, run.score.total);
    os << line;
  }

  os << "\n";
  for (const ScenarioScore& s : result.scenarios) {
    std::snprintf(line, sizeof(line), "scenario %-20s mean %.4f over %zu run(s)\n",
                  s.scenario_id.c_str(), s.mean, s.run_count);
    os << line;
  }
  std::snprintf(line, sizeof(line), "comprehensive %.4f\n", result.comprehensive.value);
  os << line;
  return os.str();
}

std::filesystem::path write_series_csv(const std::filesystem::path& dir, const TestRun& run,
                                       const VehicleFootprint& footprint,
                                       const RoadScenario& scenario) {
  std::filesystem::create_directories(dir);
  const std::filesystem::path path = dir / (scenario.scenario_id + "__" + run.run_id + ".csv");
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw ConfigError("cannot write " + path.string());

  out << "t,outermost_lateral,warning_active,rka_active\n";
  for (const TrajectorySample& s : run.samples) {
    out << format_double(s.pose.t) << ','
        << format_double(outermost_lateral(s.pose, footprint, scenario)) << ','
        << (s.warning_active ? '1' : '0') << ',' << (s.rka_active ? '1' : '0') << "\n";
  }
  if (!out) throw ConfigError("failed while writing " + path.string());
  return path;
}

}  // namespace rdds
