#pragma once

#include <optional>
#include <string>
#include <vector>

#include "relocate/motion.hpp"
#include "relocate/tgraph.hpp"
#include "relocate/world.hpp"

namespace relocate {

/// Objects to relocate, first element next. When built from a path to the
/// target, the target is the last element.
struct RelocationPlan {
  std::vector<int> order;
  /// Node path the plan came from, starting at the robot node.
  std::vector<int> source_path;
  /// Euclidean length of source_path over node poses.
  double length = 0.0;

  std::size_t hops() const { return order.size(); }
};

/// Minimum-hop path from `robot` to `target`. Ties in hop count go to the
/// shorter Euclidean length, then to the lexicographically smaller node
/// sequence. Returns nullopt when the target is unreachable; throws
/// LookupError when either node is missing.
std::optional<RelocationPlan> reloc_path(const TGraph& g, int target,
                                         int robot = kRobotNode);

enum class Status { Done, Fail };

const char* to_string(Status s);

struct PlanOutcome {
  Status status = Status::Fail;
  /// Object ids in removal order; ends with the target on Done.
  std::vector<int> relocated;
  /// Plan recomputations forced by motion failures or newly seen objects.
  int replans = 0;
  std::string reason;
  bool timed_out = false;
};

struct PlannerOptions {
  double resolution = kDefaultResolution;
  Deadline deadline;
  /// Optional sink for per-iteration records.
  EventLog* log = nullptr;
};

/// Replanning retrieval loop for a scene whose target is already detected:
/// follow the min-hop plan, drop the robot edge of an object whose motion
/// fails, rebuild the graph after every removal, and give up once the
/// target is unreachable in the graph.
PlanOutcome base_planner(WorldState& world, MotionOracle& oracle,
                         const Workspace& w, const PlannerOptions& opts = {});

/// Target search for a scene whose target may be hidden: while the target
/// is undetected, relocate the accessible object that reveals the most
/// occluded volume, skipping objects whose motion fails. Hands over to
/// base_planner once the target shows up.
PlanOutcome reloc_planner(WorldState& world, MotionOracle& oracle,
                          const Workspace& w, const PlannerOptions& opts = {});

}  // namespace relocate
