#include "relocate/tgraph.hpp"

#include <algorithm>
#include <sstream>

namespace relocate {

struct GraphEditor {
  static void add_edge(TGraph& g, int a, int b) {
    g.adjacency_[a].push_back(b);
    g.adjacency_[b].push_back(a);
  }
  static bool erase_edge(TGraph& g, int a, int b) {
    auto drop = [&](int from, int to) {
      auto& list = g.adjacency_.at(from);
      const auto it = std::find(list.begin(), list.end(), to);
      if (it == list.end()) return false;
      list.erase(it);
      return true;
    };
    const bool removed = drop(a, b);
    if (removed) drop(b, a);
    return removed;
  }
};

bool TGraph::has_edge(int a, int b) const {
  const auto it = adjacency_.find(a);
  if (it == adjacency_.end()) return false;
  return std::binary_search(it->second.begin(), it->second.end(), b);
}

const std::vector<int>& TGraph::neighbors(int node) const {
  const auto it = adjacency_.find(node);
  if (it == adjacency_.end()) {
    throw LookupError("unknown graph node " + node_label(node));
  }
  return it->second;
}

Point TGraph::pose(int node) const {
  if (node == kRobotNode) return robot_pose_;
  return object(node).center;
}

const ObjectSpec& TGraph::object(int node) const {
  const auto it = objects_.find(node);
  if (it == objects_.end()) {
    throw LookupError("no object node " + node_label(node));
  }
  return it->second;
}

std::size_t TGraph::edge_count() const {
  std::size_t twice = 0;
  for (const auto& [node, list] : adjacency_) twice += list.size();
  return twice / 2;
}

std::string TGraph::dump() const {
  std::ostringstream out;
  for (int n : nodes_) {
    out << node_label(n);
    for (int m : adjacency_.at(n)) out << ' ' << node_label(m);
    out << '\n';
  }
  return out.str();
}

std::string node_label(int node) {
  return node == kRobotNode ? std::string("R") : std::to_string(node);
}

TGraph gen_graph(std::span<const ObjectSpec> objects, const Workspace& w,
                 double resolution) {
  std::vector<ObjectSpec> sorted(objects.begin(), objects.end());
  std::sort(sorted.begin(), sorted.end(),
            [](const ObjectSpec& a, const ObjectSpec& b) { return a.id < b.id; });

  TGraph g;
  g.robot_pose_ = w.robot_home;
  double r_max = 0.0;
  for (const ObjectSpec& o : sorted) r_max = std::max(r_max, o.radius);
  g.grasp_radius_ = r_max + w.robot_radius + w.safety_margin;

  g.nodes_.push_back(kRobotNode);
  g.adjacency_[kRobotNode];
  for (const ObjectSpec& o : sorted) {
    if (o.id < 0) throw ConfigError("object ids must be non-negative");
    if (g.objects_.contains(o.id)) {
      throw ConfigError("duplicate object id " + std::to_string(o.id));
    }
    g.nodes_.push_back(o.id);
    g.adjacency_[o.id];
    g.objects_.emplace(o.id, o);
    if (o.is_target) g.target_ = o.id;
  }

  std::vector<Disc> discs;
  discs.reserve(sorted.size());
  for (const ObjectSpec& o : sorted) discs.push_back(o.footprint());
  const BlockerGrid grid(g.grasp_radius_, discs, w, resolution);

  // Index -1 stands for the robot; object k is node sorted[k].id.
  const int n = static_cast<int>(sorted.size());
  auto pose_of = [&](int k) { return k < 0 ? w.robot_home : sorted[k].center; };
  auto node_of = [&](int k) { return k < 0 ? kRobotNode : sorted[k].id; };
  for (int i = -1; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (grid.connected(pose_of(i), pose_of(j), i, j)) {
        GraphEditor::add_edge(g, node_of(i), node_of(j));
      }
    }
  }
  for (auto& [node, list] : g.adjacency_) std::sort(list.begin(), list.end());
  return g;
}

TGraph make_graph(const std::map<int, Point>& poses,
                  const std::vector<std::pair<int, int>>& edges) {
  if (!poses.contains(kRobotNode)) throw LookupError("make_graph: robot node missing");
  TGraph g;
  for (const auto& [node, p] : poses) {
    g.nodes_.push_back(node);
    g.adjacency_[node];
    if (node == kRobotNode) {
      g.robot_pose_ = p;
      continue;
    }
    ObjectSpec o;
    o.id = node;
    o.center = p;
    g.objects_.emplace(node, o);
  }
  for (const auto& [a, b] : edges) {
    if (a == b) throw ConfigError("make_graph: self-loop on " + node_label(a));
    if (!g.has_node(a) || !g.has_node(b)) {
      throw LookupError("make_graph: edge on unknown node");
    }
    if (!g.has_edge(a, b)) {
      GraphEditor::add_edge(g, a, b);
      std::sort(g.adjacency_[a].begin(), g.adjacency_[a].end());
      std::sort(g.adjacency_[b].begin(), g.adjacency_[b].end());
    }
  }
  return g;
}

AccessibleSet accessible_objects(const TGraph& g) {
  AccessibleSet out;
  for (int n : g.neighbors(kRobotNode)) {
    out.nodes.push_back(n);
    out.objects.push_back(g.object(n));
  }
  return out;
}

EdgeRemoval remove_edge(const TGraph& g, int a, int b) {
  EdgeRemoval out{g, false};
  if (!g.has_node(a) || !g.has_node(b)) return out;
  out.removed = GraphEditor::erase_edge(out.graph, a, b);
  return out;
}

}  // namespace relocate
