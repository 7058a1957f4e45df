#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "rdds/event_extraction.hpp"
#include "rdds/geometry_metrics.hpp"
#include "rdds/road_model.hpp"

namespace support {

// Dimensions used throughout the worked examples: tire rectangle 4.0 x 1.8 m
// centered on the origin (half-width 0.9), body rectangle 5.0 x 2.0 m
// (half-width 1.0).
inline rdds::VehicleFootprint example_footprint() {
  return rdds::VehicleFootprint::rectangle(1.8, 4.0, 0.5, 0.5, 2.0);
}

inline rdds::RoadScenario make_scenario(rdds::EdgeKind kind, rdds::DepartureSide side,
                                        double edge_offset, std::string id) {
  rdds::RoadScenario s;
  s.edge_kind = kind;
  s.side = side;
  s.edge_offset = edge_offset;
  s.scenario_id = std::move(id);
  return s;
}

inline rdds::RoadScenario flat_right(double offset = 0.0, std::string id = "flat-right") {
  return make_scenario(rdds::EdgeKind::kFlat, rdds::DepartureSide::kRight, offset, std::move(id));
}

inline rdds::RoadScenario flat_left(double offset = 0.0, std::string id = "flat-left") {
  return make_scenario(rdds::EdgeKind::kFlat, rdds::DepartureSide::kLeft, offset, std::move(id));
}

inline rdds::RoadScenario vertical_right(double offset = 0.0, std::string id = "vertical-right") {
  return make_scenario(rdds::EdgeKind::kVertical, rdds::DepartureSide::kRight, offset,
                       std::move(id));
}

inline rdds::RoadScenario vertical_left(double offset = 0.0, std::string id = "vertical-left") {
  return make_scenario(rdds::EdgeKind::kVertical, rdds::DepartureSide::kLeft, offset,
                       std::move(id));
}

// Brute-force oracle: max canonical lateral over points spread densely along
// the polygon boundary (every vertex included as an edge start). Uses the
// plain rotation formula, independent of the implementation's evaluation
// order and symmetry tricks.
inline double sampled_outermost(const rdds::Pose& pose, const rdds::Polygon& poly,
                                const rdds::RoadScenario& scenario, std::size_t total_points) {
  const double s = std::sin(pose.yaw);
  const double c = std::cos(pose.yaw);
  const std::size_t per_edge = std::max<std::size_t>(2, total_points / poly.size());
  double best = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < poly.size(); ++i) {
    const rdds::Vec2& a = poly[i];
    const rdds::Vec2& b = poly[(i + 1) % poly.size()];
    for (std::size_t k = 0; k < per_edge; ++k) {
      const double f = static_cast<double>(k) / static_cast<double>(per_edge);
      const double vx = a.x + f * (b.x - a.x);
      const double vy = a.y + f * (b.y - a.y);
      const double world_y = pose.y + vx * s + vy * c;
      best = std::max(best, rdds::to_canonical(world_y, scenario));
    }
  }
  return best;
}

// Monotone-chain convex hull, counter-clockwise, collinear points dropped.
// Returns an empty polygon when fewer than 3 distinct extreme points exist.
inline rdds::Polygon convex_hull(std::vector<rdds::Vec2> pts) {
  std::sort(pts.begin(), pts.end(), [](const rdds::Vec2& a, const rdds::Vec2& b) {
    return a.x < b.x || (a.x == b.x && a.y < b.y);
  });
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  const std::size_t n = pts.size();
  if (n < 3) return {};

  auto cross = [](const rdds::Vec2& o, const rdds::Vec2& a, const rdds::Vec2& b) {
    return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
  };

  std::vector<rdds::Vec2> hull(2 * n);
  std::size_t k = 0;
  for (std::size_t i = 0; i < n; ++i) {
    while (k >= 2 && cross(hull[k - 2], hull[k - 1], pts[i]) <= 0.0) --k;
    hull[k++] = pts[i];
  }
  for (std::size_t i = n - 1, t = k + 1; i-- > 0;) {
    while (k >= t && cross(hull[k - 2], hull[k - 1], pts[i]) <= 0.0) --k;
    hull[k++] = pts[i];
  }
  hull.resize(k - 1);
  return hull;
}

// Random strictly convex polygon with vertices inside a disc of the given
// radius. Retries until the hull has at least `min_vertices` corners.
inline rdds::Polygon random_convex_polygon(std::mt19937& gen, std::size_t min_vertices = 3,
                                           double radius = 3.0) {
  std::uniform_real_distribution<double> coord(-radius, radius);
  while (true) {
    std::vector<rdds::Vec2> pts;
    for (int i = 0; i < 12; ++i) pts.push_back({coord(gen), coord(gen)});
    rdds::Polygon hull = convex_hull(std::move(pts));
    if (hull.size() >= min_vertices && rdds::is_convex_ccw(hull)) return hull;
  }
}

inline rdds::TrajectorySample sample(double t, double y, bool warn = false, bool rka = false,
                                     double yaw = 0.0, double x = 0.0) {
  rdds::TrajectorySample s;
  s.pose.t = t;
  s.pose.x = x;
  s.pose.y = y;
  s.pose.yaw = yaw;
  s.warning_active = warn;
  s.rka_active = rka;
  return s;
}

inline rdds::TestRun make_run(std::vector<rdds::TrajectorySample> samples, std::string scenario_id,
                              std::string run_id = "run") {
  rdds::TestRun run;
  run.samples = std::move(samples);
  run.scenario_ref = std::move(scenario_id);
  run.run_id = std::move(run_id);
  return run;
}

inline rdds::TriggerReport make_report(std::string scenario_id, std::optional<double> d_rdw,
                                       std::optional<double> d_rka, double d_max_lateral,
                                       std::optional<double> edge_cross_time = std::nullopt) {
  rdds::TriggerReport r;
  r.d_rdw = d_rdw;
  r.d_rka = d_rka;
  r.d_max_lateral = d_max_lateral;
  r.edge_cross_time = edge_cross_time;
  r.scenario_id = std::move(scenario_id);
  return r;
}

}  // namespace support
