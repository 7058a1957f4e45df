#include "rdds/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "rdds/errors.hpp"

namespace rdds {

namespace {

using nlohmann::json;

json parse_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open " + path.string());
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError(path.string() + ": " + e.what());
  }
}

void reject_unknown_keys(const json& obj, const std::set<std::string>& allowed,
                         const std::string& where) {
  for (const auto& [key, value] : obj.items()) {
    (void)value;
    if (!allowed.contains(key)) {
      throw ConfigError(where + ": unknown field '" + key + "'");
    }
  }
}

double number_field(const json& obj, const char* key, const std::string& where) {
  if (!obj.contains(key)) throw ConfigError(where + ": missing field '" + key + "'");
  const auto& v = obj.at(key);
  if (!v.is_number()) throw ConfigError(where + ": field '" + key + "' must be a number");
  const double d = v.get<double>();
  if (!std::isfinite(d)) throw ConfigError(where + ": field '" + key + "' must be finite");
  return d;
}

double number_field_or(const json& obj, const char* key, const std::string& where,
                       double fallback) {
  return obj.contains(key) ? number_field(obj, key, where) : fallback;
}

bool bool_field_or(const json& obj, const char* key, const std::string& where, bool fallback) {
  if (!obj.contains(key)) return fallback;
  const auto& v = obj.at(key);
  if (!v.is_boolean()) throw ConfigError(where + ": field '" + key + "' must be a boolean");
  return v.get<bool>();
}

std::string string_field(const json& obj, const char* key, const std::string& where) {
  if (!obj.contains(key)) throw ConfigError(where + ": missing field '" + key + "'");
  const auto& v = obj.at(key);
  if (!v.is_string()) throw ConfigError(where + ": field '" + key + "' must be a string");
  return v.get<std::string>();
}

Polygon polygon_field(const json& obj, const char* key, const std::string& where) {
  if (!obj.contains(key) || !obj.at(key).is_array()) {
    throw ConfigError(where + ": missing array field '" + key + "'");
  }
  Polygon poly;
  for (const auto& vertex : obj.at(key)) {
    if (!vertex.is_array() || vertex.size() != 2 || !vertex.at(0).is_number() ||
        !vertex.at(1).is_number()) {
      throw ConfigError(where + "." + key + ": each vertex must be an [x, y] number pair");
    }
    poly.push_back({vertex.at(0).get<double>(), vertex.at(1).get<double>()});
  }
  return poly;
}

VehicleFootprint footprint_from_json(const json& doc, const std::string& where) {
  if (!doc.contains("footprint") || !doc.at("footprint").is_object()) {
    throw ConfigError(where + ": missing object field 'footprint'");
  }
  const json& fp = doc.at("footprint");
  reject_unknown_keys(fp, {"rectangle", "polygons"}, where + ".footprint");
  const bool has_rect = fp.contains("rectangle");
  const bool has_poly = fp.contains("polygons");
  if (has_rect == has_poly) {
    throw ConfigError(where + ".footprint: exactly one of 'rectangle' or 'polygons' is required");
  }

  try {
    if (has_rect) {
      const json& r = fp.at("rectangle");
      const std::string rw = where + ".footprint.rectangle";
      if (!r.is_object()) throw ConfigError(rw + ": must be an object");
      reject_unknown_keys(
          r, {"track_width", "wheelbase", "front_overhang", "rear_overhang", "body_width"}, rw);
      return VehicleFootprint::rectangle(
          number_field(r, "track_width", rw), number_field(r, "wheelbase", rw),
          number_field(r, "front_overhang", rw), number_field(r, "rear_overhang", rw),
          number_field(r, "body_width", rw));
    }
    const json& p = fp.at("polygons");
    const std::string pw = where + ".footprint.polygons";
    if (!p.is_object()) throw ConfigError(pw + ": must be an object");
    reject_unknown_keys(p, {"tires", "body"}, pw);
    return VehicleFootprint::from_polygons(polygon_field(p, "tires", pw),
                                           polygon_field(p, "body", pw));
  } catch (const ConfigError&) {
    throw;
  } catch (const EvalError& e) {
    // Geometry invariants violated by config data are config failures.
    throw ConfigError(where + ".footprint: " + std::string(e.what()));
  }
}

std::vector<RoadScenario> scenarios_from_json(const json& doc, const std::string& where) {
  if (!doc.contains("scenarios") || !doc.at("scenarios").is_array()) {
    throw ConfigError(where + ": missing array field 'scenarios'");
  }
  const json& arr = doc.at("scenarios");
  if (arr.empty()) throw ConfigError(where + ".scenarios: must not be empty");

  std::vector<RoadScenario> scenarios;
  std::set<std::string> ids;
  for (std::size_t i = 0; i < arr.size(); ++i) {
    const std::string sw = where + ".scenarios[" + std::to_string(i) + "]";
    const json& s = arr.at(i);
    if (!s.is_object()) throw ConfigError(sw + ": must be an object");
    reject_unknown_keys(s, {"id", "edge", "side", "edge_offset"}, sw);

    RoadScenario scenario;
    scenario.scenario_id = string_field(s, "id", sw);
    if (scenario.scenario_id.empty()) throw ConfigError(sw + ".id: must not be empty");
    if (!ids.insert(scenario.scenario_id).second) {
      throw ConfigError(sw + ".id: duplicate scenario id '" + scenario.scenario_id + "'");
    }

    const std::string edge = string_field(s, "edge", sw);
    if (edge == "flat") {
      scenario.edge_kind = EdgeKind::kFlat;
    } else if (edge == "vertical") {
      scenario.edge_kind = EdgeKind::kVertical;
    } else {
      throw ConfigError(sw + ".edge: must be 'flat' or 'vertical', got '" + edge + "'");
    }

    const std::string side = string_field(s, "side", sw);
    if (side == "left") {
      scenario.side = DepartureSide::kLeft;
    } else if (side == "right") {
      scenario.side = DepartureSide::kRight;
    } else {
      throw ConfigError(sw + ".side: must be 'left' or 'right', got '" + side + "'");
    }

    scenario.edge_offset = number_field(s, "edge_offset", sw);
    scenarios.push_back(std::move(scenario));
  }
  return scenarios;
}

std::vector<double> scenario_weights_from_json(const json& doc, std::size_t scenario_count,
                                               const std::string& where) {
  if (!doc.contains("scenario_weights")) return equal_weights(scenario_count);
  const json& w = doc.at("scenario_weights");
  if (w.is_string()) {
    if (w.get<std::string>() != "equal") {
      throw ConfigError(where + ".scenario_weights: the only string value allowed is 'equal'");
    }
    return equal_weights(scenario_count);
  }
  if (!w.is_array()) {
    throw ConfigError(where + ".scenario_weights: must be 'equal' or an array of numbers");
  }
  if (w.size() != scenario_count) {
    std::ostringstream os;
    os << where << ".scenario_weights: expected " << scenario_count << " entries, got "
       << w.size();
    throw LengthMismatch(os.str());
  }
  std::vector<double> weights;
  double sum = 0.0;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (!w.at(i).is_number()) {
      throw ConfigError(where + ".scenario_weights[" + std::to_string(i) + "]: must be a number");
    }
    const double v = w.at(i).get<double>();
    if (!std::isfinite(v) || v < 0.0) {
      throw ConfigError(where + ".scenario_weights[" + std::to_string(i) +
                        "]: must be finite and non-negative");
    }
    weights.push_back(v);
    sum += v;
  }
  if (std::fabs(sum - 1.0) > 1e-9) {
    std::ostringstream os;
    os << where << ".scenario_weights: weights sum to " << sum << ", expected 1";
    throw WeightSumViolation(os.str());
  }
  return weights;
}

Thresholds thresholds_from_json(const json& doc, const std::string& where) {
  Thresholds thresholds;
  if (!doc.contains("thresholds")) return thresholds;
  const json& t = doc.at("thresholds");
  const std::string tw = where + ".thresholds";
  if (!t.is_object()) throw ConfigError(tw + ": must be an object");
  reject_unknown_keys(
      t, {"dtre_rdw", "dtre_rka", "max_points_rdw", "max_points_rka", "lenient_boundary"}, tw);
  thresholds.dtre_rdw = number_field_or(t, "dtre_rdw", tw, thresholds.dtre_rdw);
  thresholds.dtre_rka = number_field_or(t, "dtre_rka", tw, thresholds.dtre_rka);
  thresholds.max_points_rdw = number_field_or(t, "max_points_rdw", tw, thresholds.max_points_rdw);
  thresholds.max_points_rka = number_field_or(t, "max_points_rka", tw, thresholds.max_points_rka);
  thresholds.lenient_boundary = bool_field_or(t, "lenient_boundary", tw, false);
  try {
    validate_thresholds(thresholds);
  } catch (const EvalError& e) {
    throw ConfigError(tw + ": " + std::string(e.what()));
  }
  return thresholds;
}

Weights weights_from_json(const json& doc, const std::string& where) {
  Weights weights;
  if (!doc.contains("weights")) return weights;
  const json& w = doc.at("weights");
  const std::string ww = where + ".weights";
  if (!w.is_object()) throw ConfigError(ww + ": must be an object");
  reject_unknown_keys(w, {"warning", "steering"}, ww);
  weights.w_warning = number_field_or(w, "warning", ww, weights.w_warning);
  weights.w_steering = number_field_or(w, "steering", ww, weights.w_steering);
  try {
    validate_weights(weights);
  } catch (const EvalError& e) {
    throw ConfigError(ww + ": " + std::string(e.what()));
  }
  return weights;
}

}  // namespace

EvaluationConfig load_config(const std::filesystem::path& path) {
  const json doc = parse_file(path);
  const std::string where = path.string();
  if (!doc.is_object()) throw ConfigError(where + ": top level must be an object");
  reject_unknown_keys(
      doc, {"footprint", "scenarios", "scenario_weights", "thresholds", "weights", "strict"},
      where);

  VehicleFootprint footprint = footprint_from_json(doc, where);
  std::vector<RoadScenario> scenarios = scenarios_from_json(doc, where);
  std::vector<double> scenario_weights = scenario_weights_from_json(doc, scenarios.size(), where);
  for (std::size_t i = 0; i < scenarios.size(); ++i) {
    scenarios[i].weight = scenario_weights[i];
  }
  return {std::move(footprint),
          std::move(scenarios),
          std::move(scenario_weights),
          thresholds_from_json(doc, where),
          weights_from_json(doc, where),
          bool_field_or(doc, "strict", where, false)};
}

SynthBatch load_synth_batch(const std::filesystem::path& path) {
  const json doc = parse_file(path);
  const std::string where = path.string();
  if (!doc.is_object()) throw ConfigError(where + ": top level must be an object");
  reject_unknown_keys(doc, {"footprint", "scenarios", "runs"}, where);

  VehicleFootprint footprint = footprint_from_json(doc, where);
  std::vector<RoadScenario> scenarios = scenarios_from_json(doc, where);
  std::vector<SynthRunSpec> run_specs;

  if (!doc.contains("runs") || !doc.at("runs").is_array()) {
    throw ConfigError(where + ": missing array field 'runs'");
  }
  const json& runs = doc.at("runs");
  if (runs.empty()) throw ConfigError(where + ".runs: must not be empty");

  std::set<std::string> run_ids;
  for (std::size_t i = 0; i < runs.size(); ++i) {
    const std::string rw = where + ".runs[" + std::to_string(i) + "]";
    const json& r = runs.at(i);
    if (!r.is_object()) throw ConfigError(rw + ": must be an object");
    reject_unknown_keys(r,
                        {"scenario", "run_id", "speed", "departure_angle", "trigger_rdw_at",
                         "trigger_rka_at", "correction", "sample_rate", "duration"},
                        rw);

    SynthRunSpec run;
    run.scenario_id = string_field(r, "scenario", rw);
    const auto scenario =
        std::find_if(scenarios.begin(), scenarios.end(),
                     [&](const RoadScenario& s) { return s.scenario_id == run.scenario_id; });
    if (scenario == scenarios.end()) {
      throw UnknownScenario(rw + ".scenario: no scenario with id '" + run.scenario_id + "'");
    }
    run.run_id = string_field(r, "run_id", rw);
    if (run.run_id.empty()) throw ConfigError(rw + ".run_id: must not be empty");
    if (!run_ids.insert(run.run_id).second) {
      throw ConfigError(rw + ".run_id: duplicate run id '" + run.run_id + "'");
    }

    run.spec.edge_kind = scenario->edge_kind;
    run.spec.side = scenario->side;
    run.spec.speed = number_field_or(r, "speed", rw, run.spec.speed);
    run.spec.departure_angle = number_field_or(r, "departure_angle", rw, run.spec.departure_angle);
    run.spec.sample_rate = number_field_or(r, "sample_rate", rw, run.spec.sample_rate);
    run.spec.duration = number_field_or(r, "duration", rw, run.spec.duration);
    if (r.contains("trigger_rdw_at")) run.spec.trigger_rdw_at = number_field(r, "trigger_rdw_at", rw);
    if (r.contains("trigger_rka_at")) run.spec.trigger_rka_at = number_field(r, "trigger_rka_at", rw);

    if (r.contains("correction")) {
      const json& c = r.at("correction");
      const std::string cw = rw + ".correction";
      if (!c.is_object()) throw ConfigError(cw + ": must be an object");
      reject_unknown_keys(c, {"kind", "decel_rate"}, cw);
      const std::string kind = string_field(c, "kind", cw);
      if (kind == "none") {
        run.spec.correction.kind = Correction::Kind::kNone;
      } else if (kind == "constant_lateral_decel") {
        run.spec.correction.kind = Correction::Kind::kConstantLateralDecel;
        run.spec.correction.decel_rate = number_field(c, "decel_rate", cw);
      } else {
        throw ConfigError(cw + ".kind: must be 'none' or 'constant_lateral_decel', got '" + kind +
                          "'");
      }
    }

    run_specs.push_back(std::move(run));
  }
  return {std::move(footprint), std::move(scenarios), std::move(run_specs)};
}

}  // namespace rdds
