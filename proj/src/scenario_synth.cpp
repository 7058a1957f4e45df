#include "rdds/scenario_synth.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <vector>

#include "rdds/geometry_metrics.hpp"

namespace rdds {

namespace {

// Piecewise motion of the vehicle center in canonical coordinates:
// c(t) = c0 + u0*(t - t0) - decel*(t - t0)^2 / 2 while this segment is live.
struct MotionSegment {
  double t0 = 0.0;
  double c0 = 0.0;
  double u0 = 0.0;
  double decel = 0.0;
};

double segment_position(const MotionSegment& seg, double t) {
  const double dt = t - seg.t0;
  return seg.c0 + seg.u0 * dt - 0.5 * seg.decel * dt * dt;
}

double segment_velocity(const MotionSegment& seg, double t) {
  return seg.u0 - seg.decel * (t - seg.t0);
}

// First time >= t0 at which the segment reaches `target` moving toward the
// edge; nullopt when the segment never gets there.
std::optional<double> segment_upward_crossing(const MotionSegment& seg, double target) {
  if (seg.c0 >= target) return seg.t0;
  if (seg.decel == 0.0) {
    if (seg.u0 <= 0.0) return std::nullopt;
    return seg.t0 + (target - seg.c0) / seg.u0;
  }
  const double disc = seg.u0 * seg.u0 - 2.0 * seg.decel * (target - seg.c0);
  if (disc < 0.0) return std::nullopt;
  const double dt = (seg.u0 - std::sqrt(disc)) / seg.decel;
  if (dt < 0.0) return std::nullopt;
  return seg.t0 + dt;
}

// Crossing time of `target` over the whole realized profile, or nullopt when
// the profile stays below it through t_last.
std::optional<double> profile_crossing(const std::vector<MotionSegment>& segments, double t_last,
                                       double target) {
  for (std::size_t i = 0; i < segments.size(); ++i) {
    const double seg_end = i + 1 < segments.size() ? segments[i + 1].t0 : t_last;
    const auto t = segment_upward_crossing(segments[i], target);
    if (t && *t <= seg_end + 1e-12) return std::min(*t, t_last);
  }
  return std::nullopt;
}

// Largest canonical lateral offset any vertex of the critical polygon adds
// to the vehicle center position at this heading.
double canonical_reach(const VehicleFootprint& footprint, const RoadScenario& scenario,
                       double yaw) {
  const Polygon& poly = footprint.critical_polygon(scenario.edge_kind);
  const double ay = std::fabs(yaw);
  const double s = std::copysign(std::sin(ay), yaw);
  const double c = std::cos(ay);
  double best = -std::numeric_limits<double>::infinity();
  for (const Vec2& v : poly) {
    const double rot = v.x * s + v.y * c;
    best = std::max(best, scenario.side == DepartureSide::kRight ? rot : -rot);
  }
  return best;
}

void validate_spec(const SynthSpec& spec, const RoadScenario& scenario) {
  if (spec.edge_kind != scenario.edge_kind || spec.side != scenario.side) {
    throw ScenarioMismatch("synth spec and scenario disagree on edge kind or departure side");
  }
  if (!std::isfinite(spec.speed) || spec.speed <= 0.0) {
    throw InvariantError("synth spec: speed must be positive");
  }
  if (!std::isfinite(spec.departure_angle) || spec.departure_angle <= 0.0 ||
      spec.departure_angle >= std::numbers::pi / 2.0) {
    throw InvariantError("synth spec: departure_angle must lie in (0, pi/2)");
  }
  if (!std::isfinite(spec.sample_rate) || spec.sample_rate < 10.0) {
    throw InvariantError("synth spec: sample_rate must be at least 10 Hz");
  }
  if (!std::isfinite(spec.duration) || spec.duration <= 0.0) {
    throw InvariantError("synth spec: duration must be positive");
  }
  if (spec.correction.kind == Correction::Kind::kConstantLateralDecel &&
      (!std::isfinite(spec.correction.decel_rate) || spec.correction.decel_rate <= 0.0)) {
    throw InvariantError("synth spec: correction decel_rate must be positive");
  }
}

}  // namespace

SynthResult synthesize(const SynthSpec& spec, const VehicleFootprint& footprint,
                       const RoadScenario& scenario, const std::string& run_id) {
  validate_spec(spec, scenario);

  const long grid_count = static_cast<long>(std::floor(spec.duration * spec.sample_rate + 1e-9));
  if (grid_count < 1) {
    throw InvariantError("synth spec: duration shorter than one sample interval");
  }
  if (static_cast<std::size_t>(grid_count) + 1 > kMaxRunSamples) {
    throw InvariantError("synth spec: duration * sample_rate exceeds the per-run sample cap");
  }

  const double yaw = spec.side == DepartureSide::kRight ? spec.departure_angle
                                                        : -spec.departure_angle;
  const double reach = canonical_reach(footprint, scenario, yaw);
  const double lateral_speed = spec.speed * std::sin(spec.departure_angle);
  const double forward_speed = spec.speed * std::cos(spec.departure_angle);
  const double center_start = -kSynthInitialDtre - reach;

  TestRun run;
  run.scenario_ref = scenario.scenario_id;
  run.run_id = run_id;
  run.speed = spec.speed;
  run.departure_angle = spec.departure_angle;

  GroundTruth truth;
  truth.lateral_speed = lateral_speed;
  truth.initial_outermost = -kSynthInitialDtre;

  std::vector<MotionSegment> segments{{0.0, center_start, lateral_speed, 0.0}};
  bool warn_latched = false;
  bool rka_latched = false;
  double d_max_sampled = -std::numeric_limits<double>::infinity();
  double t_last = 0.0;
  bool contact = false;

  auto append_sample = [&](double t, double center_c) {
    Pose pose;
    pose.t = t;
    pose.x = forward_speed * t;
    pose.y = scenario.side == DepartureSide::kRight ? scenario.edge_offset + center_c
                                                    : scenario.edge_offset - center_c;
    pose.yaw = yaw;
    const double lateral = outermost_lateral(pose, footprint, scenario);

    if (spec.trigger_rdw_at && !warn_latched && lateral >= *spec.trigger_rdw_at) {
      warn_latched = true;
      truth.rdw = TriggerTruth{*spec.trigger_rdw_at, 0.0, t, lateral};
    }
    if (spec.trigger_rka_at && !rka_latched && lateral >= *spec.trigger_rka_at) {
      rka_latched = true;
      truth.rka = TriggerTruth{*spec.trigger_rka_at, 0.0, t, lateral};
      if (spec.correction.kind == Correction::Kind::kConstantLateralDecel) {
        const MotionSegment& live = segments.back();
        segments.push_back({t, segment_position(live, t), segment_velocity(live, t),
                            spec.correction.decel_rate});
      }
    }

    run.samples.push_back({pose, warn_latched, rka_latched});
    d_max_sampled = std::max(d_max_sampled, lateral);
    t_last = t;
  };

  for (long k = 0; k <= grid_count; ++k) {
    const double t_k = static_cast<double>(k) / spec.sample_rate;

    if (scenario.edge_kind == EdgeKind::kVertical) {
      const auto t_contact = segment_upward_crossing(segments.back(), -reach);
      if (t_contact && *t_contact <= t_k) {
        double tc = *t_contact;
        if (!run.samples.empty()) tc = std::max(tc, run.samples.back().pose.t + 1e-9);
        append_sample(tc, -reach);
        truth.edge_cross_time = *t_contact;
        contact = true;
        break;
      }
    }

    append_sample(t_k, segment_position(segments.back(), t_k));
  }

  if (spec.trigger_rdw_at && !warn_latched) {
    std::ostringstream os;
    os << "trigger_rdw_at " << *spec.trigger_rdw_at << " m is never reached within " << t_last
       << " s";
    throw SpecInfeasible(os.str());
  }
  if (spec.trigger_rka_at && !rka_latched) {
    std::ostringstream os;
    os << "trigger_rka_at " << *spec.trigger_rka_at << " m is never reached within " << t_last
       << " s";
    throw SpecInfeasible(os.str());
  }

  if (truth.rdw) {
    const auto t = profile_crossing(segments, t_last, truth.rdw->scripted_at - reach);
    truth.rdw->exact_time = std::min(t.value_or(truth.rdw->sample_time), truth.rdw->sample_time);
  }
  if (truth.rka) {
    const auto t = profile_crossing(segments, t_last, truth.rka->scripted_at - reach);
    truth.rka->exact_time = std::min(t.value_or(truth.rka->sample_time), truth.rka->sample_time);
  }
  if (!contact) {
    truth.edge_cross_time = profile_crossing(segments, t_last, -reach);
  }

  if (contact) {
    truth.d_max_exact = 0.0;
  } else if (segments.size() == 2) {
    const MotionSegment& braked = segments[1];
    const double peak_t = braked.t0 + braked.u0 / braked.decel;
    truth.d_max_exact = segment_position(braked, std::min(peak_t, t_last)) + reach;
  } else {
    truth.d_max_exact = segment_position(segments[0], t_last) + reach;
  }
  truth.d_max_sampled = d_max_sampled;

  return {std::move(run), std::move(truth)};
}

}  // namespace rdds
