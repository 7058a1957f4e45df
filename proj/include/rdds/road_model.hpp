#pragma once

#include <string>
#include <vector>

#include "rdds/errors.hpp"

namespace rdds {

/// 2-D point in meters. Vehicle frame: right-handed, Z up, origin at the
/// vehicle centroid, x longitudinal (forward), y lateral.
struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Vec2&, const Vec2&) = default;
};

using Polygon = std::vector<Vec2>;

/// Twice the signed area (shoelace). Positive for counter-clockwise order.
double signed_area2(const Polygon& poly);

/// True if `poly` has >= 3 finite vertices in counter-clockwise order,
/// positive area, and no reflex corner (collinear runs are tolerated).
bool is_convex_ccw(const Polygon& poly, double eps = 1e-12);

/// Closed-region containment test for a convex CCW polygon.
bool convex_contains(const Polygon& poly, const Vec2& point, double eps = 1e-9);

/// Flat edges are traversable (grass, gravel): the vehicle may penetrate
/// beyond the edge line. Vertical edges (guardrail, divider) stop the
/// vehicle at contact.
enum class EdgeKind { kFlat, kVertical };

enum class DepartureSide { kLeft, kRight };

/// Penetration beyond a vertical edge larger than this is treated as a
/// corrupt log or a mis-declared edge kind. 1 mm covers measurement noise.
inline constexpr double kVerticalPenetrationTolerance = 1e-3;

/// Vehicle outline in the vehicle frame, as two convex polygons:
///  - tire_polygon: corners where the outside edge of each tire contacts the
///    road; the critical outline for flat edges.
///  - body_polygon: outermost body outline (first collision surface); the
///    critical outline for vertical edges.
/// Both are validated convex, counter-clockwise, non-degenerate, and the
/// tire polygon must lie within the body polygon.
class VehicleFootprint {
 public:
  /// Builds from explicit convex polygons. Throws InvariantError when any
  /// footprint invariant is violated.
  static VehicleFootprint from_polygons(Polygon tire, Polygon body);

  /// Four-corner rectangles from standard dimensional measurements.
  /// The body rectangle is centered on the origin; the tire rectangle spans
  /// the wheelbase between the overhangs. All lengths in meters.
  static VehicleFootprint rectangle(double track_width, double wheelbase, double front_overhang,
                                    double rear_overhang, double body_width);

  const Polygon& tire_polygon() const noexcept { return tire_; }
  const Polygon& body_polygon() const noexcept { return body_; }

  /// Outline used for edge metrics: tires for flat edges, body for vertical.
  const Polygon& critical_polygon(EdgeKind kind) const noexcept {
    return kind == EdgeKind::kFlat ? tire_ : body_;
  }

 private:
  VehicleFootprint(Polygon tire, Polygon body) : tire_(std::move(tire)), body_(std::move(body)) {}

  Polygon tire_;
  Polygon body_;
};

/// One configured departure scenario. `edge_offset` is the lateral
/// coordinate of the road edge line in the log's raw frame; `weight` is the
/// scenario's share of the comprehensive score (weights across a scenario
/// set must sum to 1, enforced at aggregation).
struct RoadScenario {
  EdgeKind edge_kind = EdgeKind::kFlat;
  DepartureSide side = DepartureSide::kRight;
  double edge_offset = 0.0;
  std::string scenario_id;
  double weight = 1.0;
};

/// Maps a raw lateral coordinate into the canonical evaluation frame: the
/// road edge line sits at 0, on-road positions are negative, and the
/// departure direction is positive. Right departures are an identity after
/// subtracting edge_offset; left departures are mirrored, so the per-side
/// sign conventions collapse into one code path.
///
/// For vertical edges the physical position saturates at contact: values in
/// (0, kVerticalPenetrationTolerance] are clamped to 0, anything beyond
/// throws InvalidVerticalPenetration.
double to_canonical(double raw_lateral, const RoadScenario& scenario);

/// Undoes the side mirroring: converts a canonical value back to the
/// per-side literal sign convention used for reporting.
double canonical_to_literal(double canonical, const RoadScenario& scenario);

}  // namespace rdds
