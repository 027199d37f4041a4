#pragma once

#include <cstdint>
#include <map>
#include <random>
#include <vector>

#include "oracles.hpp"
#include "relocate/harness.hpp"
#include "relocate/tgraph.hpp"

namespace fixture {

using relocate::ObjectSpec;
using relocate::Point;
using relocate::Scenario;

/// Four objects and the robot: the target t (id 0) sits behind object 2;
/// v1-v2 and vt-v3 are missing; the robot reaches only objects 2 and 3.
Scenario pocket();

/// Case I scene whose min-hop plan is (9, 7) with target 7; after 9 goes the
/// target is directly reachable, and object 5 offers a second route.
Scenario detour();

/// Case II scene, target 1, hidden obstacles 4 and 7: removing 0 reveals 4
/// and a later removal reveals 7.
Scenario two_reveal();

/// Case III scene: one occluder in front of the hidden target.
Scenario case3_single_occluder();

/// Random graph on the robot node (-1) and `n` object nodes with edge
/// probability `p`, plus random node poses.
struct RandomGraph {
  oracle::Adjacency adjacency;
  std::map<int, Point> pose;
};

RandomGraph random_graph(std::mt19937_64& rng, int n, double p,
                         bool force_connected);

relocate::TGraph to_tgraph(const RandomGraph& g);

/// Non-overlapping objects placed uniformly on the default shelf.
std::vector<ObjectSpec> random_objects(std::mt19937_64& rng, int n,
                                       double wall_clearance = 0.03);

}  // namespace fixture
