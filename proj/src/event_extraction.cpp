#include "rdds/event_extraction.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

namespace rdds {

void validate_run(const TestRun& run) {
  const auto& samples = run.samples;
  if (samples.size() < 2) {
    std::ostringstream os;
    os << "run '" << run.run_id << "' has " << samples.size() << " samples; at least 2 required";
    throw InvariantError(os.str());
  }
  if (samples.size() > kMaxRunSamples) {
    std::ostringstream os;
    os << "run '" << run.run_id << "' has " << samples.size() << " samples; cap is "
       << kMaxRunSamples;
    throw InvariantError(os.str());
  }
  constexpr double kYawSlack = 1e-9;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const Pose& p = samples[i].pose;
    if (!std::isfinite(p.t) || p.t < 0.0 || !std::isfinite(p.x) || !std::isfinite(p.y) ||
        !std::isfinite(p.yaw)) {
      std::ostringstream os;
      os << "run '" << run.run_id << "' sample " << i << ": non-finite or negative-time pose";
      throw InvariantError(os.str());
    }
    if (p.yaw > std::numbers::pi + kYawSlack || p.yaw <= -std::numbers::pi - kYawSlack) {
      std::ostringstream os;
      os << "run '" << run.run_id << "' sample " << i << ": yaw " << p.yaw
         << " outside (-pi, pi]";
      throw InvariantError(os.str());
    }
    if (i == 0) continue;
    const double dt = p.t - samples[i - 1].pose.t;
    if (dt <= 0.0) {
      std::ostringstream os;
      os << "run '" << run.run_id << "' sample " << i << ": timestamp " << p.t
         << " does not increase over " << samples[i - 1].pose.t;
      throw MonotonicityViolation(os.str());
    }
    if (dt > kMaxSampleGap + 1e-9) {
      std::ostringstream os;
      os << "run '" << run.run_id << "' sample " << i << ": gap " << dt << " s exceeds "
         << kMaxSampleGap << " s (10 Hz minimum)";
      throw InvariantError(os.str());
    }
  }
}

TriggerReport extract(const TestRun& run, const VehicleFootprint& footprint,
                      const RoadScenario& scenario) {
  validate_run(run);

  TriggerReport report;
  report.scenario_id = scenario.scenario_id;

  double max_lateral = -std::numeric_limits<double>::infinity();
  double prev_lateral = 0.0;
  double prev_t = 0.0;

  for (std::size_t i = 0; i < run.samples.size(); ++i) {
    const TrajectorySample& sample = run.samples[i];
    const double lateral = outermost_lateral(sample.pose, footprint, scenario);

    if (i == 0 && lateral >= 0.0) {
      std::ostringstream os;
      os << "run '" << run.run_id << "' starts with outermost lateral " << lateral
         << " m; the vehicle must be on the road at the beginning of the test";
      throw StartsOffRoad(os.str());
    }

    // Only the first onset of each channel counts.
    if (!report.d_rdw && sample.warning_active) report.d_rdw = lateral;
    if (!report.d_rka && sample.rka_active) report.d_rka = lateral;

    max_lateral = std::max(max_lateral, lateral);

    if (!report.edge_cross_time && lateral >= 0.0) {
      if (lateral == 0.0) {
        report.edge_cross_time = sample.pose.t;
      } else {
        // prev_lateral < 0 <= lateral here, so the denominator is positive.
        const double frac = (0.0 - prev_lateral) / (lateral - prev_lateral);
        report.edge_cross_time = prev_t + frac * (sample.pose.t - prev_t);
      }
    }

    prev_lateral = lateral;
    prev_t = sample.pose.t;
  }

  report.d_max_lateral = max_lateral;
  return report;
}

std::pair<TestRun, RoadScenario> mirror_run(const TestRun& run, const RoadScenario& scenario) {
  TestRun mirrored = run;
  for (TrajectorySample& sample : mirrored.samples) {
    sample.pose.y = -sample.pose.y;
    sample.pose.yaw = -sample.pose.yaw;
  }
  RoadScenario flipped = scenario;
  flipped.side =
      scenario.side == DepartureSide::kRight ? DepartureSide::kLeft : DepartureSide::kRight;
  flipped.edge_offset = -scenario.edge_offset;
  return {std::move(mirrored), std::move(flipped)};
}

double estimate_lateral_velocity(const TestRun& run, std::size_t index,
                                 const VehicleFootprint& footprint,
                                 const RoadScenario& scenario) {
  validate_run(run);
  if (index >= run.samples.size()) {
    throw InvariantError("estimate_lateral_velocity: sample index out of range");
  }
  const std::size_t lo = index == 0 ? 0 : index - 1;
  const std::size_t hi = index + 1 < run.samples.size() ? index + 1 : index;
  const double l_lo = outermost_lateral(run.samples[lo].pose, footprint, scenario);
  const double l_hi = outermost_lateral(run.samples[hi].pose, footprint, scenario);
  return (l_hi - l_lo) / (run.samples[hi].pose.t - run.samples[lo].pose.t);
}

}  // namespace rdds
