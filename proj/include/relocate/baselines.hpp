#pragma once

#include <optional>
#include <set>
#include <vector>

#include "relocate/motion.hpp"
#include "relocate/planner.hpp"
#include "relocate/world.hpp"

namespace relocate {

/// Clear the distance-optimal end-effector path, widening the swept
/// corridor after every motion failure. An object whose motion failed is
/// passed over until another removal changes the scene.
struct DistanceConfig {
  double initial_width = 0.06;
  double width_increment = 0.02;
  /// A failure at this width ends the run.
  double max_width = 0.45;
};

/// Local planner that looks for blockers in an angular window around the
/// robot-to-goal bearing and widens the window after every motion failure.
struct VfhConfig {
  double initial_angle_deg = 90.0;
  double angle_increment_deg = 10.0;
  double max_angle_deg = 360.0;
};

/// Shortest path of the bare end-effector (radius r_r) from the robot home
/// to `goal` with walls as the only obstacles: 8-connected grid search
/// followed by line-of-sight shortcutting. nullopt when no path exists.
std::optional<std::vector<Point>> end_effector_path(const Workspace& w,
                                                    Point goal,
                                                    double resolution);

/// Distance from `p` to the polyline, and the arc length of the closest
/// point measured from the polyline's start.
struct PolylineProjection {
  double distance = 0.0;
  double arc = 0.0;
};

PolylineProjection project_on_polyline(Point p, const std::vector<Point>& line);

PlanOutcome distance_planner(WorldState& world, MotionOracle& oracle,
                             const Workspace& w, const DistanceConfig& cfg = {},
                             const PlannerOptions& opts = {});

/// Known objects that block the straight approach to `goal` within the
/// window: nearer to the robot than `goal`, bearing within +-window/2 of the
/// goal bearing, and intersecting the straight corridor of half-width
/// r_goal + r_r + r_s. Ordered by distance to the sight line. Objects in
/// `skip` are ignored.
std::vector<int> vfh_blockers(const WorldState& world, const Workspace& w,
                              int goal, double window_deg,
                              const std::set<int>& skip = {});

/// Object the local planner would relocate next when heading for `goal`:
/// descend through blockers until one with nothing in its own way, taking
/// the one nearest the robot. Objects in `skip` (motion failed in the
/// current scene) are treated as absent and never returned; nullopt when
/// nothing is left to try.
std::optional<int> vfh_choose(const WorldState& world, const Workspace& w,
                              int goal, double window_deg,
                              const std::set<int>& skip = {});

PlanOutcome vfh_local_planner(WorldState& world, MotionOracle& oracle,
                              const Workspace& w, const VfhConfig& cfg = {},
                              const PlannerOptions& opts = {});

}  // namespace relocate
