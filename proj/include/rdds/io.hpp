#pragma once

#include <filesystem>
#include <string>

#include "rdds/event_extraction.hpp"
#include "rdds/scenario_synth.hpp"

namespace rdds {

enum class RunFormat { kCsv, kJson };

// Picks the format from the file extension (.csv or .json, case-insensitive).
RunFormat detect_run_format(const std::filesystem::path& path);

// Reads a trajectory file into a validated TestRun. CSV files start with
// `#key=value` metadata lines (scenario is required) followed by the exact
// header `t,x,y,yaw,warning_active,rka_active`. JSON files carry the same
// fields as an object with a `samples` array. Yaw is normalized on ingest.
TestRun ingest_run(const std::filesystem::path& path, RunFormat format);
TestRun ingest_run(const std::filesystem::path& path);

void write_run_csv(const std::filesystem::path& path, const TestRun& run);
void write_truth_json(const std::filesystem::path& path, const GroundTruth& truth,
                      const std::string& run_id);

}  // namespace rdds
