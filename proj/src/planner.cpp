#include "relocate/planner.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <deque>
#include <map>

#include "relocate/occlusion.hpp"
#include "run_context.hpp"

namespace relocate {
namespace {

bool same_length(double a, double b) {
  return std::abs(a - b) <= 1e-12 * std::max(1.0, std::max(std::abs(a), std::abs(b)));
}

struct Best {
  double length = 0.0;
  std::vector<int> path;
};

bool better(const Best& cand, const Best& cur) {
  if (!same_length(cand.length, cur.length)) return cand.length < cur.length;
  return cand.path < cur.path;
}

PlanOutcome run_base(RunContext& run) {
  WorldState& world = run.world;
  const int target = world.target_id();
  if (!world.target_detected()) return run.fail("target not detected");

  TGraph graph = gen_graph(world.belief(), run.w, run.opts.resolution);
  run.log_graph("graph", graph, std::nullopt, "initial");
  auto plan = reloc_path(graph, target);
  run.log_plan(graph, plan);
  if (!plan) return run.fail("no path to target");

  while (true) {
    if (run.opts.deadline.expired()) return run.timeout();
    const int next = plan->order.front();
    const auto verdict = run.query(next, graph);
    if (!verdict) return run.outcome();

    if (*verdict == Verdict::Success) {
      run.relocate(next);
      if (next == target) return run.done();
      const std::vector<int> fresh = world.sense(run.w);
      if (!fresh.empty()) {
        run.log_reveal(fresh);
        ++run.result.replans;
      }
      graph = gen_graph(world.belief(), run.w, run.opts.resolution);
      run.log_graph("rebuild", graph, std::nullopt,
                    fresh.empty() ? "removal" : "reveal");
    } else {
      graph = remove_edge(graph, kRobotNode, next).graph;
      run.log_graph("edge_removed", graph, next, "R-" + std::to_string(next));
      ++run.result.replans;
    }

    plan = reloc_path(graph, target);
    run.log_plan(graph, plan);
    if (!plan) return run.fail("no path to target");
  }
}

}  // namespace

const char* to_string(Status s) { return s == Status::Done ? "done" : "fail"; }

std::optional<RelocationPlan> reloc_path(const TGraph& g, int target, int robot) {
  if (!g.has_node(robot)) {
    throw LookupError("reloc_path: robot node " + node_label(robot) + " missing");
  }
  if (!g.has_node(target)) {
    throw LookupError("reloc_path: target node " + node_label(target) + " missing");
  }

  std::map<int, int> hops;
  std::vector<int> order;
  std::deque<int> queue{robot};
  hops[robot] = 0;
  while (!queue.empty()) {
    const int u = queue.front();
    queue.pop_front();
    order.push_back(u);
    if (u == target) continue;
    for (int v : g.neighbors(u)) {
      if (hops.emplace(v, hops[u] + 1).second) queue.push_back(v);
    }
  }
  const auto reached = hops.find(target);
  if (reached == hops.end()) return std::nullopt;
  const int k = reached->second;

  // Nodes come out of the queue layer by layer, so every predecessor of a
  // node is settled before the node itself.
  std::map<int, Best> best;
  best[robot] = {0.0, {robot}};
  for (int v : order) {
    const int h = hops.at(v);
    if (v == robot || h > k) continue;
    std::optional<Best> pick;
    for (int u : g.neighbors(v)) {
      const auto hu = hops.find(u);
      if (hu == hops.end() || hu->second != h - 1) continue;
      const Best& from = best.at(u);
      Best cand{from.length + distance(g.pose(u), g.pose(v)), from.path};
      cand.path.push_back(v);
      if (!pick || better(cand, *pick)) pick = std::move(cand);
    }
    best[v] = std::move(*pick);
  }

  RelocationPlan plan;
  const Best& chosen = best.at(target);
  plan.source_path = chosen.path;
  plan.length = chosen.length;
  plan.order.assign(chosen.path.begin() + 1, chosen.path.end());
  return plan;
}

PlanOutcome base_planner(WorldState& world, MotionOracle& oracle,
                         const Workspace& w, const PlannerOptions& opts) {
  RunContext run(world, oracle, w, opts);
  return run_base(run);
}

PlanOutcome reloc_planner(WorldState& world, MotionOracle& oracle,
                          const Workspace& w, const PlannerOptions& opts) {
  RunContext run(world, oracle, w, opts);
  while (!world.target_detected()) {
    if (opts.deadline.expired()) return run.timeout();
    const std::vector<ObjectSpec> known = world.belief();
    const TGraph graph = gen_graph(known, w, opts.resolution);
    run.log_graph("search", graph, std::nullopt, "search");

    std::map<int, double> metric;
    for (const ObjectSpec& o : accessible_objects(graph).objects) {
      metric[o.id] = revealed_volume(o.id, known, world.camera(), w);
      char buf[64];
      std::snprintf(buf, sizeof buf, "%.17g", metric[o.id]);
      run.log_simple("metric", o.id, buf);
    }

    bool relocated = false;
    while (!relocated) {
      if (metric.empty()) return run.fail("no accessible object can be relocated");
      // Largest revealed volume; ties go to the smaller id.
      auto pick = metric.begin();
      for (auto it = metric.begin(); it != metric.end(); ++it) {
        if (it->second > pick->second) pick = it;
      }
      const int candidate = pick->first;
      const auto verdict = run.query(candidate, graph);
      if (!verdict) return run.outcome();
      if (*verdict == Verdict::Success) {
        run.relocate(candidate);
        const std::vector<int> fresh = world.sense(w);
        if (!fresh.empty()) run.log_reveal(fresh);
        relocated = true;
      } else {
        metric.erase(pick);
        if (metric.empty()) {
          return run.fail("motion planning failed for every accessible object");
        }
      }
    }
  }
  return run_base(run);
}

}  // namespace relocate
