#include "rdds/geometry_metrics.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

namespace rdds {

double normalize_yaw(double yaw) {
  double wrapped = std::remainder(yaw, 2.0 * std::numbers::pi);
  if (wrapped == -std::numbers::pi) wrapped = std::numbers::pi;
  return wrapped;
}

double outermost_lateral(const Pose& pose, const VehicleFootprint& footprint,
                         const RoadScenario& scenario) {
  const Polygon& poly = footprint.critical_polygon(scenario.edge_kind);

  // Odd/even symmetry in yaw is forced explicitly so that mirrored runs
  // (yaw negated) map to bitwise-identical canonical values.
  const double ay = std::fabs(pose.yaw);
  const double s = std::copysign(std::sin(ay), pose.yaw);
  const double c = std::cos(ay);

  double best = -std::numeric_limits<double>::infinity();
  for (const Vec2& v : poly) {
    const double world_y = pose.y + (v.x * s + v.y * c);
    best = std::max(best, to_canonical(world_y, scenario));
  }
  return best;
}

double dtre(const Pose& pose, const VehicleFootprint& footprint, const RoadScenario& scenario) {
  return -outermost_lateral(pose, footprint, scenario);
}

double ttlc(const Pose& pose, double lateral_velocity, const VehicleFootprint& footprint,
            const RoadScenario& scenario) {
  const double remaining = dtre(pose, footprint, scenario);
  if (remaining < 0.0) {
    std::ostringstream os;
    os << "ttlc requested after crossing (dtre = " << remaining << " m)";
    throw NegativeDtre(os.str());
  }
  if (lateral_velocity <= 0.0) return std::numeric_limits<double>::infinity();
  return remaining / lateral_velocity;
}

}  // namespace rdds
