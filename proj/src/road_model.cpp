#include "rdds/road_model.hpp"

#include <cmath>
#include <sstream>

namespace rdds {

namespace {

double cross(const Vec2& o, const Vec2& a, const Vec2& b) {
  return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
}

bool all_finite(const Polygon& poly) {
  for (const auto& v : poly) {
    if (!std::isfinite(v.x) || !std::isfinite(v.y)) return false;
  }
  return true;
}

}  // namespace

double signed_area2(const Polygon& poly) {
  double area2 = 0.0;
  const size_t n = poly.size();
  for (size_t i = 0; i < n; ++i) {
    const Vec2& a = poly[i];
    const Vec2& b = poly[(i + 1) % n];
    area2 += a.x * b.y - b.x * a.y;
  }
  return area2;
}

bool is_convex_ccw(const Polygon& poly, double eps) {
  const size_t n = poly.size();
  if (n < 3 || !all_finite(poly)) return false;
  if (signed_area2(poly) <= eps) return false;
  for (size_t i = 0; i < n; ++i) {
    const Vec2& a = poly[i];
    const Vec2& b = poly[(i + 1) % n];
    const Vec2& c = poly[(i + 2) % n];
    if (cross(a, b, c) < -eps) return false;
  }
  return true;
}

bool convex_contains(const Polygon& poly, const Vec2& point, double eps) {
  const size_t n = poly.size();
  for (size_t i = 0; i < n; ++i) {
    if (cross(poly[i], poly[(i + 1) % n], point) < -eps) return false;
  }
  return true;
}

VehicleFootprint VehicleFootprint::from_polygons(Polygon tire, Polygon body) {
  if (!is_convex_ccw(tire)) {
    throw InvariantError("tire_polygon must be convex, counter-clockwise, with positive area");
  }
  if (!is_convex_ccw(body)) {
    throw InvariantError("body_polygon must be convex, counter-clockwise, with positive area");
  }
  for (size_t i = 0; i < tire.size(); ++i) {
    if (!convex_contains(body, tire[i])) {
      std::ostringstream os;
      os << "tire_polygon vertex " << i << " (" << tire[i].x << ", " << tire[i].y
         << ") lies outside body_polygon";
      throw InvariantError(os.str());
    }
  }
  return VehicleFootprint(std::move(tire), std::move(body));
}

VehicleFootprint VehicleFootprint::rectangle(double track_width, double wheelbase,
                                             double front_overhang, double rear_overhang,
                                             double body_width) {
  auto positive = [](double v, const char* name) {
    if (!std::isfinite(v) || v <= 0.0) {
      throw InvariantError(std::string(name) + " must be positive and finite");
    }
  };
  positive(track_width, "track_width");
  positive(wheelbase, "wheelbase");
  positive(body_width, "body_width");
  if (!std::isfinite(front_overhang) || front_overhang < 0.0 || !std::isfinite(rear_overhang) ||
      rear_overhang < 0.0) {
    throw InvariantError("front_overhang and rear_overhang must be non-negative and finite");
  }
  if (track_width > body_width) {
    throw InvariantError("track_width exceeds body_width; tires would protrude from the body");
  }

  const double body_length = wheelbase + front_overhang + rear_overhang;
  const double body_front = body_length / 2.0;
  const double body_rear = -body_length / 2.0;
  const double axle_front = body_front - front_overhang;
  const double axle_rear = body_rear + rear_overhang;
  const double half_track = track_width / 2.0;
  const double half_body = body_width / 2.0;

  Polygon tire = {{axle_rear, -half_track},
                  {axle_front, -half_track},
                  {axle_front, half_track},
                  {axle_rear, half_track}};
  Polygon body = {{body_rear, -half_body},
                  {body_front, -half_body},
                  {body_front, half_body},
                  {body_rear, half_body}};
  return from_polygons(std::move(tire), std::move(body));
}

double to_canonical(double raw_lateral, const RoadScenario& scenario) {
  const double shifted = raw_lateral - scenario.edge_offset;
  double canonical = scenario.side == DepartureSide::kRight ? shifted : -shifted;
  if (scenario.edge_kind == EdgeKind::kVertical && canonical > 0.0) {
    if (canonical > kVerticalPenetrationTolerance) {
      std::ostringstream os;
      os << "lateral position " << canonical << " m beyond a vertical edge (scenario '"
         << scenario.scenario_id << "'); corrupt log or wrong edge_kind";
      throw InvalidVerticalPenetration(os.str());
    }
    canonical = 0.0;  // contact saturates at the edge
  }
  return canonical;
}

double canonical_to_literal(double canonical, const RoadScenario& scenario) {
  return scenario.side == DepartureSide::kRight ? canonical : -canonical;
}

}  // namespace rdds
