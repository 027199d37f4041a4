#include "fixtures.hpp"

#include <stdexcept>

namespace fixture {
namespace {

ObjectSpec obj(int id, double x, double y, double r, double h = 0.065) {
  ObjectSpec o;
  o.id = id;
  o.center = {x, y};
  o.radius = r;
  o.height = h;
  return o;
}

Scenario scene(relocate::Case c, std::vector<ObjectSpec> objects, int target) {
  Scenario sc;
  sc.scenario_case = c;
  for (ObjectSpec& o : objects) o.is_target = o.id == target;
  sc.objects = std::move(objects);
  return sc;
}

}  // namespace

Scenario pocket() {
  // o_2 is the largest object and closes the back-left pocket around the
  // target; o_3 closes the back-right pocket around o_1.
  return scene(relocate::Case::I,
               {obj(0, 0.12, 0.33, 0.02), obj(1, 0.78, 0.33, 0.02),
                obj(2, 0.225, 0.225, 0.05), obj(3, 0.675, 0.225, 0.045)},
               0);
}

Scenario detour() {
  return scene(relocate::Case::I,
               {obj(0, 0.8457, 0.1329, 0.0289, 0.0617), obj(1, 0.5738, 0.1034, 0.0266, 0.0601),
                obj(2, 0.1498, 0.1609, 0.0258, 0.0624), obj(3, 0.1552, 0.1072, 0.0279, 0.0633),
                obj(4, 0.5342, 0.1759, 0.0267, 0.0683), obj(5, 0.3599, 0.2733, 0.0274, 0.0650),
                obj(6, 0.8606, 0.2838, 0.0284, 0.0604), obj(7, 0.5990, 0.3501, 0.0289, 0.0633),
                obj(8, 0.1618, 0.0314, 0.0290, 0.0667), obj(9, 0.7158, 0.2102, 0.0257, 0.0692)},
               7);
}

Scenario two_reveal() {
  std::vector<ObjectSpec> objects{obj(0, 0.1093, 0.0539, 0.0300, 0.0636),
                                  obj(1, 0.1090, 0.3234, 0.0294, 0.0677),
                                  obj(2, 0.5262, 0.1642, 0.0271, 0.0601),
                                  obj(3, 0.5720, 0.2891, 0.0251, 0.0645),
                                  obj(4, 0.0585, 0.0948, 0.0251, 0.0657),
                                  obj(5, 0.8610, 0.3181, 0.0282, 0.0608),
                                  obj(6, 0.2238, 0.0949, 0.0264, 0.0664),
                                  obj(7, 0.5746, 0.3930, 0.0281, 0.0650),
                                  obj(8, 0.7415, 0.1159, 0.0290, 0.0626),
                                  obj(9, 0.3211, 0.1234, 0.0260, 0.0646)};
  objects[4].hidden = true;
  objects[7].hidden = true;
  return scene(relocate::Case::II, std::move(objects), 1);
}

Scenario case3_single_occluder() {
  std::vector<ObjectSpec> objects{obj(0, 0.45, 0.15, 0.03, 0.07),
                                  obj(1, 0.45, 0.30, 0.025, 0.06)};
  objects[1].hidden = true;
  return scene(relocate::Case::III, std::move(objects), 1);
}

RandomGraph random_graph(std::mt19937_64& rng, int n, double p,
                         bool force_connected) {
  RandomGraph g;
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::uniform_real_distribution<double> px(0.0, 0.9), py(0.0, 0.45);
  g.adjacency[-1];
  g.pose[-1] = {0.45, -0.10};
  for (int i = 0; i < n; ++i) {
    g.adjacency[i];
    g.pose[i] = {px(rng), py(rng)};
  }
  auto link = [&](int a, int b) {
    g.adjacency[a].insert(b);
    g.adjacency[b].insert(a);
  };
  if (force_connected) {
    // Random spanning tree: node i hangs off one of the nodes before it.
    for (int i = 0; i < n; ++i) {
      std::uniform_int_distribution<int> parent(-1, i - 1);
      link(i, parent(rng));
    }
  }
  for (int a = -1; a < n; ++a) {
    for (int b = a + 1; b < n; ++b) {
      if (u(rng) < p) link(a, b);
    }
  }
  return g;
}

relocate::TGraph to_tgraph(const RandomGraph& g) {
  std::vector<std::pair<int, int>> edges;
  for (const auto& [a, nbrs] : g.adjacency) {
    for (int b : nbrs) {
      if (a < b) edges.emplace_back(a, b);
    }
  }
  return relocate::make_graph(g.pose, edges);
}

std::vector<ObjectSpec> random_objects(std::mt19937_64& rng, int n,
                                       double wall_clearance) {
  std::uniform_real_distribution<double> radius(0.025, 0.03), height(0.06, 0.07);
  std::vector<ObjectSpec> out;
  for (int id = 0; id < n; ++id) {
    ObjectSpec o;
    o.id = id;
    o.radius = radius(rng);
    o.height = height(rng);
    const double c = std::max(wall_clearance, o.radius);
    std::uniform_real_distribution<double> x(c, 0.9 - c), y(c, 0.45 - c);
    bool placed = false;
    for (int tries = 0; tries < 10000 && !placed; ++tries) {
      o.center = {x(rng), y(rng)};
      placed = true;
      for (const ObjectSpec& p : out) {
        if (relocate::distance(o.center, p.center) < o.radius + p.radius) {
          placed = false;
          break;
        }
      }
    }
    if (!placed) throw std::runtime_error("random_objects: shelf too crowded");
    out.push_back(o);
  }
  return out;
}

}  // namespace fixture
