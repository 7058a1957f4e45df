#include "rdds/io.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string_view>
#include <system_error>
#include <vector>

#include <json.hpp>

#include "rdds/errors.hpp"
#include "rdds/geometry_metrics.hpp"

namespace rdds {

namespace {

constexpr std::string_view kCsvHeader = "t,x,y,yaw,warning_active,rka_active";

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::string location(const std::filesystem::path& path, std::size_t line) {
  std::ostringstream os;
  os << path.string() << " line " << line;
  return os.str();
}

double parse_double_field(std::string_view field, const std::filesystem::path& path,
                          std::size_t line, std::size_t column, std::string_view name) {
  const std::string text(trim(field));
  if (text.empty()) {
    throw ParseError(location(path, line) + " column " + std::to_string(column) + ": empty " +
                     std::string(name) + " field");
  }
  char* end = nullptr;
  const double value = std::strtod(text.c_str(), &end);
  if (end != text.c_str() + text.size()) {
    throw ParseError(location(path, line) + " column " + std::to_string(column) + ": '" + text +
                     "' is not a number");
  }
  if (!std::isfinite(value)) {
    throw ParseError(location(path, line) + " column " + std::to_string(column) + ": " +
                     std::string(name) + " must be finite");
  }
  return value;
}

bool parse_bool_field(std::string_view field, const std::filesystem::path& path, std::size_t line,
                      std::size_t column, std::string_view name) {
  const std::string_view text = trim(field);
  if (text == "0") return false;
  if (text == "1") return true;
  throw ParseError(location(path, line) + " column " + std::to_string(column) + ": " +
                   std::string(name) + " must be 0 or 1, got '" + std::string(text) + "'");
}

std::vector<std::string_view> split_fields(std::string_view row) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = row.find(',', start);
    if (comma == std::string_view::npos) {
      fields.push_back(row.substr(start));
      return fields;
    }
    fields.push_back(row.substr(start, comma - start));
    start = comma + 1;
  }
}

std::string format_double(double value) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, res.ptr);
}

TestRun ingest_run_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path.string());

  TestRun run;
  run.run_id = path.stem().string();
  bool saw_scenario = false;
  bool saw_header = false;
  double prev_t = 0.0;
  std::string line;
  std::size_t line_no = 0;

  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const std::string_view stripped = trim(line);
    if (stripped.empty()) continue;

    if (stripped.front() == '#') {
      if (saw_header) {
        throw ParseError(location(path, line_no) + ": metadata lines must precede the header");
      }
      const std::string_view body = stripped.substr(1);
      const std::size_t eq = body.find('=');
      if (eq == std::string_view::npos) {
        throw ParseError(location(path, line_no) + ": metadata line is not key=value");
      }
      const std::string_view key = trim(body.substr(0, eq));
      const std::string_view value = trim(body.substr(eq + 1));
      if (key == "scenario") {
        run.scenario_ref = std::string(value);
        saw_scenario = true;
      } else if (key == "run_id") {
        run.run_id = std::string(value);
      } else if (key == "speed") {
        run.speed = parse_double_field(value, path, line_no, 1, "speed");
      } else if (key == "departure_angle") {
        run.departure_angle = parse_double_field(value, path, line_no, 1, "departure_angle");
      } else {
        throw ParseError(location(path, line_no) + ": unknown metadata key '" + std::string(key) +
                         "'");
      }
      continue;
    }

    if (!saw_header) {
      if (stripped != kCsvHeader) {
        throw ParseError(location(path, line_no) + ": expected header '" +
                         std::string(kCsvHeader) + "', got '" + std::string(stripped) + "'");
      }
      saw_header = true;
      continue;
    }

    const auto fields = split_fields(stripped);
    if (fields.size() != 6) {
      throw ParseError(location(path, line_no) + ": expected 6 fields, got " +
                       std::to_string(fields.size()));
    }

    TrajectorySample sample;
    sample.pose.t = parse_double_field(fields[0], path, line_no, 1, "t");
    sample.pose.x = parse_double_field(fields[1], path, line_no, 2, "x");
    sample.pose.y = parse_double_field(fields[2], path, line_no, 3, "y");
    sample.pose.yaw = normalize_yaw(parse_double_field(fields[3], path, line_no, 4, "yaw"));
    sample.warning_active = parse_bool_field(fields[4], path, line_no, 5, "warning_active");
    sample.rka_active = parse_bool_field(fields[5], path, line_no, 6, "rka_active");

    if (!run.samples.empty() && sample.pose.t <= prev_t) {
      std::ostringstream os;
      os << location(path, line_no) << ": time " << sample.pose.t
         << " does not increase past previous row's " << prev_t;
      throw MonotonicityViolation(os.str());
    }
    prev_t = sample.pose.t;

    if (run.samples.size() == kMaxRunSamples) {
      throw InvariantError(location(path, line_no) + ": run exceeds the per-run sample cap");
    }
    run.samples.push_back(sample);
  }

  if (!saw_header) throw ParseError(path.string() + ": missing header row");
  if (!saw_scenario) throw ParseError(path.string() + ": missing '#scenario=' metadata line");

  validate_run(run);
  return run;
}

double require_number(const nlohmann::json& obj, const char* key, const std::string& where) {
  if (!obj.contains(key)) throw SchemaError(where + ": missing field '" + key + "'");
  const auto& v = obj.at(key);
  if (!v.is_number()) throw SchemaError(where + ": field '" + key + "' must be a number");
  const double d = v.get<double>();
  if (!std::isfinite(d)) throw SchemaError(where + ": field '" + key + "' must be finite");
  return d;
}

bool require_bool(const nlohmann::json& obj, const char* key, const std::string& where) {
  if (!obj.contains(key)) throw SchemaError(where + ": missing field '" + key + "'");
  const auto& v = obj.at(key);
  if (!v.is_boolean()) throw SchemaError(where + ": field '" + key + "' must be a boolean");
  return v.get<bool>();
}

TestRun ingest_run_json(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path.string());

  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
  if (!doc.is_object()) throw SchemaError(path.string() + ": top level must be an object");

  TestRun run;
  run.run_id = path.stem().string();
  if (!doc.contains("scenario") || !doc.at("scenario").is_string()) {
    throw SchemaError(path.string() + ": missing string field 'scenario'");
  }
  run.scenario_ref = doc.at("scenario").get<std::string>();
  if (doc.contains("run_id")) {
    if (!doc.at("run_id").is_string()) {
      throw SchemaError(path.string() + ": field 'run_id' must be a string");
    }
    run.run_id = doc.at("run_id").get<std::string>();
  }
  if (doc.contains("speed")) run.speed = require_number(doc, "speed", path.string());
  if (doc.contains("departure_angle")) {
    run.departure_angle = require_number(doc, "departure_angle", path.string());
  }

  if (!doc.contains("samples") || !doc.at("samples").is_array()) {
    throw SchemaError(path.string() + ": missing array field 'samples'");
  }
  const auto& samples = doc.at("samples");
  if (samples.size() > kMaxRunSamples) {
    throw InvariantError(path.string() + ": run exceeds the per-run sample cap");
  }
  run.samples.reserve(samples.size());
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const std::string where = path.string() + " samples[" + std::to_string(i) + "]";
    const auto& s = samples.at(i);
    if (!s.is_object()) throw SchemaError(where + ": must be an object");
    TrajectorySample sample;
    sample.pose.t = require_number(s, "t", where);
    sample.pose.x = require_number(s, "x", where);
    sample.pose.y = require_number(s, "y", where);
    sample.pose.yaw = normalize_yaw(require_number(s, "yaw", where));
    sample.warning_active = require_bool(s, "warning_active", where);
    sample.rka_active = require_bool(s, "rka_active", where);
    if (!run.samples.empty() && sample.pose.t <= run.samples.back().pose.t) {
      std::ostringstream os;
      os << where << ": time " << sample.pose.t << " does not increase past previous sample's "
         << run.samples.back().pose.t;
      throw MonotonicityViolation(os.str());
    }
    run.samples.push_back(sample);
  }

  validate_run(run);
  return run;
}

}  // namespace

RunFormat detect_run_format(const std::filesystem::path& path) {
  std::string ext = path.extension().string();
  std::transform(ext.begin(), ext.end(), ext.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (ext == ".csv") return RunFormat::kCsv;
  if (ext == ".json") return RunFormat::kJson;
  throw ParseError(path.string() + ": unrecognized run file extension '" + ext + "'");
}

TestRun ingest_run(const std::filesystem::path& path, RunFormat format) {
  return format == RunFormat::kCsv ? ingest_run_csv(path) : ingest_run_json(path);
}

TestRun ingest_run(const std::filesystem::path& path) {
  return ingest_run(path, detect_run_format(path));
}

void write_run_csv(const std::filesystem::path& path, const TestRun& run) {
  if (!path.parent_path().empty()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw ConfigError("cannot write " + path.string());

  out << "#scenario=" << run.scenario_ref << "\n";
  out << "#run_id=" << run.run_id << "\n";
  out << "#speed=" << format_double(run.speed) << "\n";
  out << "#departure_angle=" << format_double(run.departure_angle) << "\n";
  out << kCsvHeader << "\n";
  for (const TrajectorySample& s : run.samples) {
    out << format_double(s.pose.t) << ',' << format_double(s.pose.x) << ','
        << format_double(s.pose.y) << ',' << format_double(s.pose.yaw) << ','
        << (s.warning_active ? '1' : '0') << ',' << (s.rka_active ? '1' : '0') << "\n";
  }
  if (!out) throw ConfigError("failed while writing " + path.string());
}

void write_truth_json(const std::filesystem::path& path, const GroundTruth& truth,
                      const std::string& run_id) {
  nlohmann::ordered_json doc;
  doc["run_id"] = run_id;
  doc["initial_outermost"] = truth.initial_outermost;
  doc["lateral_speed"] = truth.lateral_speed;

  auto trigger_json = [](const std::optional<TriggerTruth>& t) -> nlohmann::ordered_json {
    if (!t) return nullptr;
    nlohmann::ordered_json obj;
    obj["scripted_at"] = t->scripted_at;
    obj["exact_time"] = t->exact_time;
    obj["sample_time"] = t->sample_time;
    obj["sample_value"] = t->sample_value;
    return obj;
  };
  doc["rdw"] = trigger_json(truth.rdw);
  doc["rka"] = trigger_json(truth.rka);
  doc["edge_cross_time"] =
      truth.edge_cross_time ? nlohmann::ordered_json(*truth.edge_cross_time) : nullptr;
  doc["d_max_sampled"] = truth.d_max_sampled;
  doc["d_max_exact"] = truth.d_max_exact;

  if (!path.parent_path().empty()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw ConfigError("cannot write " + path.string());
  out << doc.dump(2) << "\n";
  if (!out) throw ConfigError("failed while writing " + path.string());
}

}  // namespace rdds
