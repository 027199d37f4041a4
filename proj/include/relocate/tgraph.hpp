#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "relocate/corridor.hpp"
#include "relocate/geometry.hpp"

namespace relocate {

/// Node id of the robot. Object nodes use the object's id (>= 0).
inline constexpr int kRobotNode = -1;

/// Traversability graph: an edge (i, j) certifies that the end-effector
/// holding the largest object can travel between the poses of i and j once
/// both are gone. Unweighted, undirected, no self-loops. Immutable; edits
/// return a new graph.
class TGraph {
 public:
  /// Robot node first, then object ids ascending.
  const std::vector<int>& nodes() const { return nodes_; }
  bool has_node(int node) const { return adjacency_.contains(node); }
  bool has_edge(int a, int b) const;
  /// Sorted neighbor ids. Throws LookupError for unknown nodes.
  const std::vector<int>& neighbors(int node) const;
  Point pose(int node) const;
  const ObjectSpec& object(int node) const;
  std::size_t edge_count() const;
  double grasp_radius() const { return grasp_radius_; }
  /// Target node, when the target is among the graph's objects.
  std::optional<int> target() const { return target_; }

  /// One line per node: the node id followed by its sorted neighbor ids.
  /// The robot node prints as "R".
  std::string dump() const;

 private:
  friend TGraph gen_graph(std::span<const ObjectSpec>, const Workspace&, double);
  friend TGraph make_graph(const std::map<int, Point>&,
                           const std::vector<std::pair<int, int>>&);
  friend struct GraphEditor;

  std::vector<int> nodes_;
  std::map<int, std::vector<int>> adjacency_;
  std::map<int, ObjectSpec> objects_;
  Point robot_pose_;
  double grasp_radius_ = 0.0;
  std::optional<int> target_;
};

/// Builds the graph over `objects` (the detected ones) and the robot node.
/// Uses r_g = r_max + r_r + r_s with r_max over `objects`. An edge exists iff
/// a corridor of radius r_g joins the two poses with both endpoint objects
/// removed; walls always count.
TGraph gen_graph(std::span<const ObjectSpec> objects, const Workspace& w,
                 double resolution = kDefaultResolution);

/// Graph with the given node poses and edges, for planning on abstract
/// graphs. `poses` must contain the robot node; object nodes get a zero
/// radius disc at their pose. Throws LookupError for edges on unknown
/// nodes and ConfigError for self-loops.
TGraph make_graph(const std::map<int, Point>& poses,
                  const std::vector<std::pair<int, int>>& edges);

struct AccessibleSet {
  std::vector<ObjectSpec> objects;
  std::vector<int> nodes;
};

/// Objects adjacent to the robot node, ordered by id.
AccessibleSet accessible_objects(const TGraph& g);

struct EdgeRemoval {
  TGraph graph;
  /// False when the edge was not present; the graph is then unchanged.
  bool removed = false;
};

EdgeRemoval remove_edge(const TGraph& g, int a, int b);

std::string node_label(int node);

}  // namespace relocate
