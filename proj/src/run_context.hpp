#pragma once

#include <optional>
#include <string>
#include <vector>

#include "relocate/motion.hpp"
#include "relocate/planner.hpp"
#include "relocate/tgraph.hpp"
#include "relocate/world.hpp"

namespace relocate {

/// Bookkeeping shared by the planner loops: step counter, event records,
/// and the outcome under construction.
struct RunContext {
  RunContext(WorldState& world_, MotionOracle& oracle_, const Workspace& w_,
             const PlannerOptions& opts_)
      : world(world_), oracle(oracle_), w(w_), opts(opts_) {}

  WorldState& world;
  MotionOracle& oracle;
  const Workspace& w;
  const PlannerOptions& opts;
  PlanOutcome result;
  int step = 0;

  void emit(Event e) {
    if (opts.log) opts.log->add(std::move(e));
  }

  void log_graph(const std::string& kind, const TGraph& g,
                 std::optional<int> object, const std::string& note) {
    Event e;
    e.step = step;
    e.kind = kind;
    e.object = object;
    e.nodes = static_cast<int>(g.nodes().size());
    e.edges = static_cast<int>(g.edge_count());
    e.note = note;
    emit(std::move(e));
  }

  void log_plan(const TGraph& g, const std::optional<RelocationPlan>& plan) {
    Event e;
    e.step = step;
    e.kind = "plan";
    e.nodes = static_cast<int>(g.nodes().size());
    e.edges = static_cast<int>(g.edge_count());
    e.plan = plan ? plan->order : std::vector<int>{};
    emit(std::move(e));
  }

  void log_simple(const std::string& kind, std::optional<int> object,
                  const std::string& note) {
    Event e;
    e.step = step;
    e.kind = kind;
    e.object = object;
    e.note = note;
    emit(std::move(e));
  }

  void log_reveal(const std::vector<int>& ids) {
    log_simple("reveal", std::nullopt, join_ids(ids));
  }

  /// Starts a new step and asks the oracle about `object`. An oracle that
  /// throws ends the run: the result is a Fail and nullopt is returned.
  std::optional<Verdict> query(int object, const TGraph& g) {
    ++step;
    Verdict v;
    try {
      v = oracle.query(object, world, w);
    } catch (const std::exception& ex) {
      fail(std::string("oracle error: ") + ex.what());
      return std::nullopt;
    }
    Event e;
    e.step = step;
    e.kind = "attempt";
    e.object = object;
    e.verdict = to_string(v);
    e.nodes = static_cast<int>(g.nodes().size());
    e.edges = static_cast<int>(g.edge_count());
    emit(std::move(e));
    return v;
  }

  /// Same as query() for planners without a graph.
  std::optional<Verdict> query(int object) {
    ++step;
    Verdict v;
    try {
      v = oracle.query(object, world, w);
    } catch (const std::exception& ex) {
      fail(std::string("oracle error: ") + ex.what());
      return std::nullopt;
    }
    Event e;
    e.step = step;
    e.kind = "attempt";
    e.object = object;
    e.verdict = to_string(v);
    emit(std::move(e));
    return v;
  }

  void relocate(int object) {
    world.remove(object);
    result.relocated.push_back(object);
    log_simple("remove", object, "");
  }

  PlanOutcome fail(const std::string& reason) {
    result.status = Status::Fail;
    result.reason = reason;
    log_simple("fail", std::nullopt, reason);
    return result;
  }

  PlanOutcome timeout() {
    result.timed_out = true;
    return fail("timeout");
  }

  PlanOutcome done() {
    result.status = Status::Done;
    result.reason.clear();
    log_simple("done", std::nullopt, "");
    return result;
  }

  PlanOutcome outcome() const { return result; }
};

}  // namespace relocate
