#include <gtest/gtest.h>

#include <cmath>
#include <cstddef>
#include <optional>

#include "rdds/errors.hpp"
#include "rdds/event_extraction.hpp"
#include "rdds/scenario_synth.hpp"
#include "rdds/scoring.hpp"
#include "support.hpp"

namespace {

using rdds::Correction;
using rdds::RoadScenario;
using rdds::SynthResult;
using rdds::SynthSpec;
using rdds::TriggerReport;
using rdds::VehicleFootprint;

constexpr double kFiveDegrees = 0.087266462599716474;

SynthSpec base_spec(rdds::EdgeKind kind, rdds::DepartureSide side) {
  SynthSpec spec;
  spec.speed = 20.0;
  spec.departure_angle = kFiveDegrees;
  spec.edge_kind = kind;
  spec.side = side;
  spec.sample_rate = 50.0;
  spec.duration = 1.0;
  return spec;
}

TEST(Synthesize, CruiseWithoutTriggersCrossesTheEdge) {
  const VehicleFootprint fp = support::example_footprint();
  const RoadScenario sc = support::flat_right();
  const SynthSpec spec = base_spec(rdds::EdgeKind::kFlat, rdds::DepartureSide::kRight);
  const SynthResult result = rdds::synthesize(spec, fp, sc, "cruise");

  EXPECT_NO_THROW(rdds::validate_run(result.run));
  EXPECT_EQ(result.run.run_id, "cruise");
  EXPECT_EQ(result.run.scenario_ref, sc.scenario_id);
  EXPECT_EQ(result.run.speed, 20.0);
  EXPECT_EQ(result.run.samples.size(), 51u);

  const TriggerReport report = rdds::extract(result.run, fp, sc);
  EXPECT_FALSE(report.d_rdw.has_value());
  EXPECT_FALSE(report.d_rka.has_value());
  EXPECT_GT(report.d_max_lateral, 0.0);

  // 0.5 m of road at 20 m/s, 5 degrees: crossing at 0.5 / (v sin a).
  ASSERT_TRUE(result.truth.edge_cross_time.has_value());
  EXPECT_NEAR(*result.truth.edge_cross_time, 0.28684283114174641, 1e-9);
  EXPECT_NEAR(*result.truth.edge_cross_time, 0.5 / result.truth.lateral_speed, 1e-12);
  ASSERT_TRUE(report.edge_cross_time.has_value());
  EXPECT_NEAR(*report.edge_cross_time, *result.truth.edge_cross_time, 1e-9);

  EXPECT_EQ(result.truth.lateral_speed, 20.0 * std::sin(kFiveDegrees));
  EXPECT_EQ(result.truth.initial_outermost, -0.5);
  EXPECT_EQ(report.d_max_lateral, result.truth.d_max_sampled);
  EXPECT_GE(result.truth.d_max_exact, result.truth.d_max_sampled);
}

TEST(Synthesize, FirstSampleSitsAtInitialDistance) {
  const VehicleFootprint fp = support::example_footprint();
  const RoadScenario sc = support::flat_left(0.8, "flat-left-off");
  SynthSpec spec = base_spec(rdds::EdgeKind::kFlat, rdds::DepartureSide::kLeft);
  const SynthResult result = rdds::synthesize(spec, fp, sc);
  const double first =
      rdds::outermost_lateral(result.run.samples.front().pose, fp, sc);
  EXPECT_NEAR(first, -0.5, 1e-12);
}

TEST(Synthesize, UniformGridTimestamps) {
  const VehicleFootprint fp = support::example_footprint();
  const RoadScenario sc = support::flat_right();
  SynthSpec spec = base_spec(rdds::EdgeKind::kFlat, rdds::DepartureSide::kRight);
  spec.sample_rate = 25.0;
  spec.duration = 2.0;
  const SynthResult result = rdds::synthesize(spec, fp, sc);
  ASSERT_EQ(result.run.samples.size(), 51u);
  for (std::size_t k = 0; k < result.run.samples.size(); ++k) {
    EXPECT_EQ(result.run.samples[k].pose.t, static_cast<double>(k) / 25.0);
  }
}

TEST(Synthesize, ScriptedWarningLatchesWithinOneSample) {
  const VehicleFootprint fp = support::example_footprint();
  const RoadScenario sc = support::flat_right();
  SynthSpec spec = base_spec(rdds::EdgeKind::kFlat, rdds::DepartureSide::kRight);
  spec.trigger_rdw_at = -0.05;
  const SynthResult result = rdds::synthesize(spec, fp, sc);

  ASSERT_TRUE(result.truth.rdw.has_value());
  EXPECT_EQ(result.truth.rdw->scripted_at, -0.05);
  const double step = result.truth.lateral_speed / spec.sample_rate;
  EXPECT_GE(result.truth.rdw->sample_value, -0.05);
  EXPECT_LE(result.truth.rdw->sample_value, -0.05 + step + 1e-12);
  EXPECT_LE(result.truth.rdw->exact_time, result.truth.rdw->sample_time);
  EXPECT_LE(result.truth.rdw->sample_time - result.truth.rdw->exact_time,
            1.0 / spec.sample_rate + 1e-12);

  // The evaluator reads back exactly the sampled onset value.
  const TriggerReport report = rdds::extract(result.run, fp, sc);
  ASSERT_TRUE(report.d_rdw.has_value());
  EXPECT_EQ(*report.d_rdw, result.truth.rdw->sample_value);
  EXPECT_FALSE(report.d_rka.has_value());

  // Channel is a latch: once on, on for the rest of the run.
  bool seen = false;
  for (const rdds::TrajectorySample& s : result.run.samples) {
    if (seen) {
      EXPECT_TRUE(s.warning_active);
    }
    seen = seen || s.warning_active;
  }
  EXPECT_TRUE(seen);
}

TEST(Synthesize, VerticalRunTruncatesExactlyAtContact) {
  const VehicleFootprint fp = support::example_footprint();
  const RoadScenario sc = support::vertical_right();
  SynthSpec spec = base_spec(rdds::EdgeKind::kVertical, rdds::DepartureSide::kRight);
  spec.speed = 10.0;
  spec.duration = 5.0;
  const SynthResult result = rdds::synthesize(spec, fp, sc);

  ASSERT_GE(result.run.samples.size(), 2u);
  EXPECT_LT(result.run.samples.size(), 100u);  // truncated well before the 5 s grid

  const double last =
      rdds::outermost_lateral(result.run.samples.back().pose, fp, sc);
  EXPECT_EQ(last, 0.0);
  for (std::size_t i = 0; i + 1 < result.run.samples.size(); ++i) {
    EXPECT_LT(rdds::outermost_lateral(result.run.samples[i].pose, fp, sc), 0.0);
  }

  ASSERT_TRUE(result.truth.edge_cross_time.has_value());
  EXPECT_NEAR(*result.truth.edge_cross_time, 0.5 / result.truth.lateral_speed, 1e-12);
  EXPECT_EQ(result.truth.d_max_sampled, 0.0);
  EXPECT_EQ(result.truth.d_max_exact, 0.0);

  const TriggerReport report = rdds::extract(result.run, fp, sc);
  ASSERT_TRUE(report.edge_cross_time.has_value());
  EXPECT_NEAR(*report.edge_cross_time, *result.truth.edge_cross_time, 1e-8);
  EXPECT_NO_THROW(rdds::validate_run(result.run));
}

TEST(Synthesize, VerticalContactStillLatchesShallowTriggers) {
  const VehicleFootprint fp = support::example_footprint();
  const RoadScenario sc = support::vertical_left();
  SynthSpec spec = base_spec(rdds::EdgeKind::kVertical, rdds::DepartureSide::kLeft);
  spec.speed = 10.0;
  spec.duration = 5.0;
  spec.trigger_rdw_at = -0.3;
  spec.trigger_rka_at = -0.001;  // shallower than one sample of travel
  const SynthResult result = rdds::synthesize(spec, fp, sc);
  ASSERT_TRUE(result.truth.rdw.has_value());
  ASSERT_TRUE(result.truth.rka.has_value());
  EXPECT_LE(result.truth.rka->sample_value, 0.0);
}

TEST(Synthesize, MirroredSpecMatchesMirroredRun) {
  const VehicleFootprint fp = support::example_footprint();
  const struct {
    rdds::EdgeKind kind;
    double offset;
    std::optional<double> rdw;
    std::optional<double> rka;
    Correction correction;
  } cases[] = {
      {rdds::EdgeKind::kFlat, 0.7, -0.05, std::nullopt, {}},
      {rdds::EdgeKind::kFlat, -1.3, -0.05, -0.02, {Correction::Kind::kConstantLateralDecel, 1.5}},
      {rdds::EdgeKind::kVertical, 0.4, -0.3, -0.2, {}},
  };
  for (const auto& c : cases) {
    const RoadScenario right = support::make_scenario(c.kind, rdds::DepartureSide::kRight,
                                                      c.offset, "mirror-pair");
    const RoadScenario left = support::make_scenario(c.kind, rdds::DepartureSide::kLeft,
                                                     -c.offset, "mirror-pair");
    SynthSpec spec = base_spec(c.kind, rdds::DepartureSide::kRight);
    spec.speed = 12.0;
    spec.duration = 2.0;
    spec.trigger_rdw_at = c.rdw;
    spec.trigger_rka_at = c.rka;
    spec.correction = c.correction;

    const SynthResult on_right = rdds::synthesize(spec, fp, right, "pair");
    spec.side = rdds::DepartureSide::kLeft;
    const SynthResult on_left = rdds::synthesize(spec, fp, left, "pair");

    const auto [mirrored, mirrored_sc] = rdds::mirror_run(on_right.run, right);
    EXPECT_EQ(on_left.run, mirrored);
    EXPECT_EQ(mirrored_sc.side, left.side);
    EXPECT_EQ(mirrored_sc.edge_offset, left.edge_offset);

    // Ground truth is side-independent.
    EXPECT_EQ(on_left.truth.d_max_sampled, on_right.truth.d_max_sampled);
    EXPECT_EQ(on_left.truth.rdw.has_value(), on_right.truth.rdw.has_value());
    if (on_left.truth.rdw) {
      EXPECT_EQ(on_left.truth.rdw->sample_value, on_right.truth.rdw->sample_value);
      EXPECT_EQ(on_left.truth.rdw->sample_time, on_right.truth.rdw->sample_time);
    }
  }
}

TEST(Synthesize, CorrectionReversesTheDrift) {
  const VehicleFootprint fp = support::example_footprint();
  const RoadScenario sc = support::flat_right();
  SynthSpec spec = base_spec(rdds::EdgeKind::kFlat, rdds::DepartureSide::kRight);
  spec.speed = 15.0;
  spec.duration = 3.0;
  spec.trigger_rka_at = -0.1;

  const SynthResult uncorrected = rdds::synthesize(spec, fp, sc, "drift");

  spec.correction = {Correction::Kind::kConstantLateralDecel, 2.0};
  const SynthResult corrected = rdds::synthesize(spec, fp, sc, "assisted");

  EXPECT_LT(corrected.truth.d_max_sampled, uncorrected.truth.d_max_sampled);
  EXPECT_GE(corrected.truth.d_max_exact, corrected.truth.d_max_sampled);
  // The parabolic peak can exceed the best sample by at most decel*dt^2/8.
  const double dt = 1.0 / spec.sample_rate;
  EXPECT_NEAR(corrected.truth.d_max_exact, corrected.truth.d_max_sampled,
              2.0 * dt * dt / 8.0 + 1e-9);

  // After the reversal the vehicle moves back toward the road.
  const rdds::TriggerReport report = rdds::extract(corrected.run, fp, sc);
  const double final_lateral =
      rdds::outermost_lateral(corrected.run.samples.back().pose, fp, sc);
  EXPECT_LT(final_lateral, report.d_max_lateral);
  EXPECT_EQ(report.d_max_lateral, corrected.truth.d_max_sampled);
}

TEST(Synthesize, OvershootFixtureSeparatesStrictScoring) {
  // Triggers in time, but the correction is weak enough to let the vehicle
  // run ~0.18 m past a flat edge: inside the warning allowance, beyond the
  // steering allowance.
  const VehicleFootprint fp = support::example_footprint();
  const RoadScenario sc = support::flat_right();
  SynthSpec spec;
  spec.speed = 10.0;
  spec.departure_angle = 0.0349065850398866;  // 2 degrees
  spec.edge_kind = rdds::EdgeKind::kFlat;
  spec.side = rdds::DepartureSide::kRight;
  spec.sample_rate = 50.0;
  spec.duration = 4.0;
  spec.trigger_rdw_at = -0.05;
  spec.trigger_rka_at = -0.02;
  const double u = spec.speed * std::sin(spec.departure_angle);
  spec.correction = {Correction::Kind::kConstantLateralDecel, u * u / 0.4};

  const SynthResult result = rdds::synthesize(spec, fp, sc, "overshoot");
  EXPECT_GT(result.truth.d_max_sampled, 0.1);
  EXPECT_LT(result.truth.d_max_sampled, 0.2);

  const TriggerReport report = rdds::extract(result.run, fp, sc);
  const rdds::Thresholds thresholds;
  const rdds::Weights weights;

  const rdds::RunScore relaxed = rdds::score_run(report, sc, thresholds, weights, false);
  EXPECT_EQ(relaxed.total, 0.5);

  const rdds::RunScore strict = rdds::score_run(report, sc, thresholds, weights, true);
  EXPECT_EQ(strict.s_w, 0.25);
  EXPECT_EQ(strict.s_s, 0.0);
  EXPECT_TRUE(strict.has_flag(rdds::RunFlag::kStrictExcursionFail));
}

TEST(Synthesize, UnreachableTriggersAreRejected) {
  const VehicleFootprint fp = support::example_footprint();
  const RoadScenario flat = support::flat_right();
  SynthSpec spec = base_spec(rdds::EdgeKind::kFlat, rdds::DepartureSide::kRight);
  spec.duration = 0.1;  // only ~0.17 m of lateral travel
  spec.trigger_rdw_at = -0.05;
  EXPECT_THROW(rdds::synthesize(spec, fp, flat), rdds::SpecInfeasible);

  const RoadScenario vert = support::vertical_right();
  SynthSpec vspec = base_spec(rdds::EdgeKind::kVertical, rdds::DepartureSide::kRight);
  vspec.duration = 5.0;
  vspec.trigger_rka_at = 0.1;  // a vertical edge caps canonical lateral at 0
  EXPECT_THROW(rdds::synthesize(vspec, fp, vert), rdds::SpecInfeasible);
}

TEST(Synthesize, ValidatesSpecAgainstScenario) {
  const VehicleFootprint fp = support::example_footprint();
  const SynthSpec spec = base_spec(rdds::EdgeKind::kFlat, rdds::DepartureSide::kRight);
  EXPECT_THROW(rdds::synthesize(spec, fp, support::vertical_right()), rdds::ScenarioMismatch);
  EXPECT_THROW(rdds::synthesize(spec, fp, support::flat_left()), rdds::ScenarioMismatch);
}

TEST(Synthesize, RejectsDegenerateParameters) {
  const VehicleFootprint fp = support::example_footprint();
  const RoadScenario sc = support::flat_right();
  SynthSpec spec = base_spec(rdds::EdgeKind::kFlat, rdds::DepartureSide::kRight);

  spec.speed = 0.0;
  EXPECT_THROW(rdds::synthesize(spec, fp, sc), rdds::InvariantError);

  spec = base_spec(rdds::EdgeKind::kFlat, rdds::DepartureSide::kRight);
  spec.departure_angle = 0.0;
  EXPECT_THROW(rdds::synthesize(spec, fp, sc), rdds::InvariantError);
  spec.departure_angle = 1.6;  // beyond pi/2
  EXPECT_THROW(rdds::synthesize(spec, fp, sc), rdds::InvariantError);

  spec = base_spec(rdds::EdgeKind::kFlat, rdds::DepartureSide::kRight);
  spec.sample_rate = 5.0;
  EXPECT_THROW(rdds::synthesize(spec, fp, sc), rdds::InvariantError);

  spec = base_spec(rdds::EdgeKind::kFlat, rdds::DepartureSide::kRight);
  spec.duration = 0.0;
  EXPECT_THROW(rdds::synthesize(spec, fp, sc), rdds::InvariantError);

  spec = base_spec(rdds::EdgeKind::kFlat, rdds::DepartureSide::kRight);
  spec.correction = {Correction::Kind::kConstantLateralDecel, 0.0};
  EXPECT_THROW(rdds::synthesize(spec, fp, sc), rdds::InvariantError);
}

}  // namespace
