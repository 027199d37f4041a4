#pragma once

// Reference computations for the tests. Deliberately written without the
// library's grid, graph or occlusion code so the two can disagree.

#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <utility>
#include <vector>

#include "relocate/geometry.hpp"
#include "relocate/occlusion.hpp"

namespace oracle {

using relocate::CameraModel;
using relocate::Disc;
using relocate::ObjectSpec;
using relocate::Point;
using relocate::Workspace;

/// 4-connected flood fill on a cell-centred grid of size `res` over the
/// shelf plus apron. A cell is free when its centre keeps `radius` from
/// every disc and wall.
bool corridor(double radius, Point a, Point b, const std::vector<Disc>& obstacles,
              const Workspace& w, double res);

using EdgeSet = std::set<std::pair<int, int>>;

/// T-graph edges (robot node = -1, pairs ordered) for moving radius
/// `radius`, each pair checked with both endpoint objects removed.
EdgeSet edge_set(const std::vector<ObjectSpec>& objects, const Workspace& w,
                 double res, double radius);

/// r_max + r_r + r_s.
double grasp_radius(const std::vector<ObjectSpec>& objects, const Workspace& w);

using Adjacency = std::map<int, std::set<int>>;

/// All-pairs hop distances (Floyd-Warshall); missing entries mean
/// unreachable.
std::map<std::pair<int, int>, int> hop_distances(const Adjacency& g);

/// Every simple path from s to t with the minimum number of edges, found by
/// enumerating simple paths of length 1, 2, ... Empty when unreachable.
std::vector<std::vector<int>> min_hop_paths(const Adjacency& g, int s, int t);

double path_length(const std::vector<int>& path, const std::map<int, Point>& pose);

struct Estimate {
  double value = 0.0;
  /// One standard error.
  double sigma = 0.0;
};

/// Stratified Monte-Carlo area of the shelf points behind any disc, with
/// `side_x` by `side_y` jittered strata.
Estimate mc_shadow_area(const std::vector<Disc>& discs, Point camera,
                        const Workspace& w, int side_x, int side_y,
                        std::uint64_t seed);

/// Stratified Monte-Carlo area of the points shadowed by `discs[k]` and by
/// no other disc, times `reference_height`.
Estimate mc_revealed_volume(const std::vector<Disc>& discs, std::size_t k,
                            Point camera, const Workspace& w,
                            double reference_height, int side_x, int side_y,
                            std::uint64_t seed);

/// Behind-the-disc test written from the definition: p is outside the disc
/// and the sight segment camera->p comes within r of the centre.
bool behind(Point p, const Disc& d, Point camera);

/// Visibility by dense boundary sampling: an object counts as seen when
/// some boundary point facing the camera is not behind any other object.
std::set<int> seen_objects(const std::vector<ObjectSpec>& objects,
                           const CameraModel& cam, int samples);

}  // namespace oracle
