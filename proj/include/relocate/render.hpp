#pragma once

#include <string>
#include <vector>

#include "relocate/harness.hpp"
#include "relocate/world.hpp"

namespace relocate {

struct RenderOptions {
  bool graph = true;
  bool path = true;
  bool shadows = true;
  /// Pixels per meter.
  double scale = 1000.0;
  double resolution = kDefaultResolution;
};

/// One SVG picture of the robot's view of a world: the shelf and apron,
/// known objects (target in red), present but undetected objects dashed,
/// shadow wedges of the present objects, T-graph edges over the known
/// objects and the min-hop path to the target when there is one.
/// Deterministic: identical inputs give identical bytes.
std::string render_svg(const WorldState& world, const Workspace& w,
                       const RenderOptions& opts = {},
                       const std::string& title = "");

std::string render_scenario(const Scenario& sc, const RenderOptions& opts = {});

/// Replays the removals recorded in `log` on the scenario's initial world.
/// Frame 0 is the initial scene; frame k follows the k-th removal.
std::vector<std::string> render_frames(const Scenario& sc, const EventLog& log,
                                       const RenderOptions& opts = {});

}  // namespace relocate
