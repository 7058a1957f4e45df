#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "rdds/geometry_metrics.hpp"
#include "rdds/road_model.hpp"

namespace rdds {

/// Minimum sampling rate: consecutive samples may be at most this far apart.
inline constexpr double kMaxSampleGap = 0.1;  // seconds

/// Hard cap on samples per run; keeps ingestion memory bounded.
inline constexpr std::size_t kMaxRunSamples = 10'000'000;

struct TrajectorySample {
  Pose pose;
  bool warning_active = false;
  bool rka_active = false;

  friend bool operator==(const TrajectorySample&, const TrajectorySample&) = default;
};

/// One recorded (or synthesized) departure test. `speed` and
/// `departure_angle` are nominal test parameters carried as metadata.
struct TestRun {
  std::vector<TrajectorySample> samples;
  std::string scenario_ref;
  std::string run_id;
  double speed = 0.0;            // m/s
  double departure_angle = 0.0;  // radians

  friend bool operator==(const TestRun&, const TestRun&) = default;
};

/// Scoring inputs extracted from one run. All lateral values are canonical
/// (edge at 0, departure direction positive). An absent d_rdw means the
/// warning channel never went active; likewise d_rka for the assist channel.
struct TriggerReport {
  std::optional<double> d_rdw;
  std::optional<double> d_rka;
  double d_max_lateral = 0.0;
  std::optional<double> edge_cross_time;
  std::string scenario_id;  // scenario the report was extracted against

  friend bool operator==(const TriggerReport&, const TriggerReport&) = default;
};

/// Structural validation: >= 2 samples, strictly increasing timestamps,
/// gaps <= kMaxSampleGap, finite values, yaw in (-pi, pi]. Throws
/// MonotonicityViolation or InvariantError citing the offending sample.
void validate_run(const TestRun& run);

/// Walks the run once and extracts d_rdw / d_rka (canonical outermost
/// lateral at the first sample where the respective channel is active),
/// d_max_lateral, and the linearly interpolated time at which the critical
/// point first reaches the edge. Throws StartsOffRoad when the first sample
/// violates the on-road assumption.
TriggerReport extract(const TestRun& run, const VehicleFootprint& footprint,
                      const RoadScenario& scenario);

/// Reflects a run across the road's longitudinal axis and flips the
/// departure side. Implemented as exact sign negation (y -> -y, yaw -> -yaw)
/// with the returned scenario's edge line moved to -edge_offset, which is
/// geometrically the same reflection but exact in floating point: canonical
/// coordinates of the mirrored pair are bitwise identical to the original's,
/// and mirroring twice reproduces the input bit for bit.
std::pair<TestRun, RoadScenario> mirror_run(const TestRun& run, const RoadScenario& scenario);

/// Canonical lateral velocity of the critical point at sample `index`,
/// estimated by central finite difference (one-sided at the run ends).
double estimate_lateral_velocity(const TestRun& run, std::size_t index,
                                 const VehicleFootprint& footprint,
                                 const RoadScenario& scenario);

}  // namespace rdds
