#pragma once

#include <optional>
#include <string>

#include "rdds/event_extraction.hpp"
#include "rdds/road_model.hpp"

namespace rdds {

/// Every synthesized run starts with this much road left under the
/// critical outermost point.
inline constexpr double kSynthInitialDtre = 0.5;  // meters

/// Steering-correction model applied from the RKA trigger sample onward:
/// the lateral velocity toward the edge decreases at `decel_rate` and is
/// allowed to reverse, bringing the vehicle back toward the road.
struct Correction {
  enum class Kind { kNone, kConstantLateralDecel };
  Kind kind = Kind::kNone;
  double decel_rate = 0.0;  // m/s^2
};

/// Recipe for one synthetic departure run: straight-line motion at `speed`
/// with heading `departure_angle` toward the edge. Trigger thresholds are
/// canonical outermost-lateral positions that arm the warning / assist
/// channels; absent thresholds leave the channel silent for the whole run.
struct SynthSpec {
  double speed = 15.0;               // m/s, > 0
  double departure_angle = 0.1;      // radians, in (0, pi/2)
  EdgeKind edge_kind = EdgeKind::kFlat;
  DepartureSide side = DepartureSide::kRight;
  std::optional<double> trigger_rdw_at;
  std::optional<double> trigger_rka_at;
  Correction correction;
  double sample_rate = 50.0;  // Hz, >= 10
  double duration = 10.0;     // seconds
};

struct TriggerTruth {
  double scripted_at = 0.0;   // canonical threshold that arms the channel
  double exact_time = 0.0;    // continuous-time crossing of the threshold
  double sample_time = 0.0;   // first sample at or past the threshold
  double sample_value = 0.0;  // canonical outermost lateral at that sample
};

/// Sidecar record emitted next to each fixture; never embedded in the
/// TestRun itself, so fixtures are indistinguishable from real logs.
struct GroundTruth {
  std::optional<TriggerTruth> rdw;
  std::optional<TriggerTruth> rka;
  std::optional<double> edge_cross_time;  // continuous-time edge crossing/contact
  double initial_outermost = -kSynthInitialDtre;
  double lateral_speed = 0.0;  // v * sin(alpha), before any correction
  double d_max_sampled = 0.0;  // max outermost over the emitted samples
  double d_max_exact = 0.0;    // continuous-time max over the run window
};

struct SynthResult {
  TestRun run;
  GroundTruth truth;
};

/// Generates the run described by `spec` against `scenario`. Channel
/// booleans are derived from the sampled positions with the same geometry
/// code the evaluator uses. Vertical-edge runs are truncated at contact
/// with a final sample placed exactly on the edge. Throws ScenarioMismatch
/// when spec and scenario disagree on edge kind or side, InvariantError on
/// invalid spec parameters, and SpecInfeasible when a scripted trigger is
/// unreachable within the run.
SynthResult synthesize(const SynthSpec& spec, const VehicleFootprint& footprint,
                       const RoadScenario& scenario, const std::string& run_id = "synth-run");

}  // namespace rdds
