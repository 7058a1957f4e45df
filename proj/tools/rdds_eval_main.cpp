#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "rdds/config.hpp"
#include "rdds/errors.hpp"
#include "rdds/io.hpp"
#include "rdds/report.hpp"
#include "rdds/scenario_synth.hpp"
#include "rdds/version.hpp"

namespace {

namespace fs = std::filesystem;

// Ground-truth sidecars written by `synth` live next to the fixture CSVs;
// directory scans must not feed them to the run parser.
bool is_truth_sidecar(const fs::path& path) {
  const std::string name = path.filename().string();
  const std::string suffix = ".truth.json";
  return name.size() > suffix.size() &&
         name.compare(name.size() - suffix.size(), suffix.size(), suffix) == 0;
}

bool extension_matches(const fs::path& path, const std::optional<rdds::RunFormat>& forced) {
  std::string ext = path.extension().string();
  std::transform(ext.begin(), ext.end(), ext.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (forced) {
    return ext == (*forced == rdds::RunFormat::kCsv ? ".csv" : ".json");
  }
  return ext == ".csv" || ext == ".json";
}

std::vector<fs::path> collect_run_files(const std::vector<std::string>& inputs,
                                        const std::optional<rdds::RunFormat>& forced) {
  std::vector<fs::path> files;
  for (const std::string& input : inputs) {
    const fs::path path(input);
    if (fs::is_directory(path)) {
      std::vector<fs::path> found;
      for (const auto& entry : fs::directory_iterator(path)) {
        if (entry.is_regular_file() && !is_truth_sidecar(entry.path()) &&
            extension_matches(entry.path(), forced)) {
          found.push_back(entry.path());
        }
      }
      std::sort(found.begin(), found.end());
      files.insert(files.end(), found.begin(), found.end());
    } else if (fs::is_regular_file(path)) {
      files.push_back(path);
    } else {
      throw rdds::ConfigError("run input '" + input + "' is neither a file nor a directory");
    }
  }
  if (files.empty()) throw rdds::EmptyRunSet("no run files found under the given --runs inputs");
  return files;
}

int run_evaluate(const std::string& config_path, const std::vector<std::string>& run_inputs,
                 const std::string& out_path, bool strict, const std::string& series_dir,
                 const std::string& format) {
  rdds::EvaluationConfig config = rdds::load_config(config_path);
  if (strict) config.strict = true;

  std::optional<rdds::RunFormat> forced;
  if (format == "csv") forced = rdds::RunFormat::kCsv;
  if (format == "json") forced = rdds::RunFormat::kJson;

  rdds::Evaluator evaluator(config);
  for (const fs::path& file : collect_run_files(run_inputs, forced)) {
    const rdds::TestRun run =
        forced ? rdds::ingest_run(file, *forced) : rdds::ingest_run(file);
    evaluator.add_run(run);
    if (!series_dir.empty()) {
      const auto scenario = std::find_if(
          config.scenarios.begin(), config.scenarios.end(),
          [&](const rdds::RoadScenario& s) { return s.scenario_id == run.scenario_ref; });
      rdds::write_series_csv(series_dir, run, config.footprint, *scenario);
    }
  }

  const rdds::EvaluationResult result = evaluator.finish();
  const std::string report = rdds::render_report_json(result, evaluator.config());

  const fs::path out(out_path);
  if (!out.parent_path().empty()) fs::create_directories(out.parent_path());
  std::ofstream out_stream(out, std::ios::trunc);
  if (!out_stream) throw rdds::ConfigError("cannot write " + out_path);
  out_stream << report;
  if (!out_stream.flush()) throw rdds::ConfigError("failed while writing " + out_path);

  std::cout << rdds::render_human_table(result);
  std::cout << "report written to " << out_path << "\n";
  return 0;
}

int run_synth(const std::string& spec_path, const std::string& out_dir) {
  const rdds::SynthBatch batch = rdds::load_synth_batch(spec_path);
  const fs::path dir(out_dir);
  fs::create_directories(dir);

  for (const rdds::SynthRunSpec& run_spec : batch.runs) {
    const auto scenario = std::find_if(
        batch.scenarios.begin(), batch.scenarios.end(),
        [&](const rdds::RoadScenario& s) { return s.scenario_id == run_spec.scenario_id; });
    const rdds::SynthResult result =
        rdds::synthesize(run_spec.spec, batch.footprint, *scenario, run_spec.run_id);
    rdds::write_run_csv(dir / (run_spec.run_id + ".csv"), result.run);
    rdds::write_truth_json(dir / (run_spec.run_id + ".truth.json"), result.truth,
                           run_spec.run_id);
  }

  std::cout << "wrote " << batch.runs.size() << " fixture run(s) to " << out_dir << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{std::string(rdds::kToolName) + " " + rdds::kToolVersion +
               " - road departure detection system evaluator"};
  app.require_subcommand(1);

  std::string config_path;
  std::vector<std::string> run_inputs;
  std::string out_path;
  bool strict = false;
  std::string series_dir;
  std::string format;

  CLI::App* eval = app.add_subcommand("evaluate", "Score trajectory runs against a scenario config");
  eval->add_option("--config", config_path, "evaluation config JSON file")->required();
  eval->add_option("--runs", run_inputs, "run files and/or directories to scan")
      ->required()
      ->expected(-1);
  eval->add_option("--out", out_path, "path for the JSON report")->required();
  eval->add_flag("--strict", strict, "also revoke points when d_max crossed the fail line");
  eval->add_option("--emit-series", series_dir, "directory for per-run lateral series CSVs");
  eval->add_option("--format", format, "force run file format instead of inferring by extension")
      ->check(CLI::IsMember({"csv", "json"}));

  std::string spec_path;
  std::string synth_out;
  CLI::App* synth = app.add_subcommand("synth", "Generate fixture runs with ground-truth sidecars");
  synth->add_option("--spec", spec_path, "synthesis batch JSON file")->required();
  synth->add_option("--out", synth_out, "output directory for fixtures")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (eval->parsed()) {
      return run_evaluate(config_path, run_inputs, out_path, strict, series_dir, format);
    }
    return run_synth(spec_path, synth_out);
  } catch (const rdds::EvalError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.exit_code();
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
