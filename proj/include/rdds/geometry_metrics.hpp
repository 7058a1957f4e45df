#pragma once

#include "rdds/road_model.hpp"

namespace rdds {

/// Timed planar pose in the log's raw frame (SAE-style, right-handed, Z up).
struct Pose {
  double t = 0.0;    // seconds
  double x = 0.0;    // meters, longitudinal
  double y = 0.0;    // meters, lateral
  double yaw = 0.0;  // radians, normalized to (-pi, pi]

  friend bool operator==(const Pose&, const Pose&) = default;
};

/// Wraps an angle into (-pi, pi].
double normalize_yaw(double yaw);

/// Canonical lateral position of the vehicle's critical outermost point:
/// the selected footprint polygon (tires for flat edges, body for vertical)
/// is placed at `pose` and every vertex is mapped through to_canonical; the
/// maximum is returned. For a convex polygon the maximum of a linear
/// functional is attained at a vertex, so vertices suffice.
double outermost_lateral(const Pose& pose, const VehicleFootprint& footprint,
                         const RoadScenario& scenario);

/// Distance to road edge: the remaining lateral distance before the critical
/// point crosses the edge. Positive on-road, zero at the edge, negative once
/// beyond (flat edges only). Equal to -outermost_lateral.
double dtre(const Pose& pose, const VehicleFootprint& footprint, const RoadScenario& scenario);

/// Time to line crossing under the constant-lateral-velocity assumption.
/// `lateral_velocity` is canonical (toward the edge positive). Returns
/// +infinity when the vehicle is not converging on the edge. Throws
/// NegativeDtre when called after the edge has already been crossed.
double ttlc(const Pose& pose, double lateral_velocity, const VehicleFootprint& footprint,
            const RoadScenario& scenario);

}  // namespace rdds
