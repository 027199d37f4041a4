#include "relocate/baselines.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <queue>
#include <set>
#include <tuple>

#include "relocate/corridor.hpp"
#include "run_context.hpp"

namespace relocate {
namespace {

std::string fixed(const char* key, double value) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%s=%.4f", key, value);
  return buf;
}

// Every sample along a-b (spaced at most half a cell apart) is a free cell.
bool line_of_sight(const GridOccupancy& grid, Point a, Point b) {
  const double len = distance(a, b);
  const int steps = std::max(1, static_cast<int>(std::ceil(len / (0.5 * grid.frame().resolution()))));
  for (int s = 0; s <= steps; ++s) {
    const double t = static_cast<double>(s) / steps;
    if (!grid.is_free(a + t * (b - a))) return false;
  }
  return true;
}

double bearing(Point from, Point to) {
  return std::atan2(to.y - from.y, to.x - from.x);
}

double angle_gap(double a, double b) {
  double d = std::fmod(std::abs(a - b), 2.0 * std::numbers::pi);
  return d > std::numbers::pi ? 2.0 * std::numbers::pi - d : d;
}

}  // namespace

std::optional<std::vector<Point>> end_effector_path(const Workspace& w,
                                                    Point goal,
                                                    double resolution) {
  const GridOccupancy grid(w.robot_radius, {}, w, resolution);
  const GridFrame& f = grid.frame();
  const auto s = f.cell_of(w.robot_home);
  const auto g = f.cell_of(goal);
  if (!s || !g || !grid.is_free(*s) || !grid.is_free(*g)) return std::nullopt;

  const double inf = std::numeric_limits<double>::infinity();
  std::vector<double> cost(static_cast<std::size_t>(f.size()), inf);
  std::vector<int> parent(static_cast<std::size_t>(f.size()), -1);
  using Item = std::pair<double, int>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> open;
  cost[*s] = 0.0;
  open.emplace(0.0, *s);
  const int cols = f.cols();
  while (!open.empty()) {
    const auto [c, cell] = open.top();
    open.pop();
    if (c > cost[cell]) continue;
    if (cell == *g) break;
    const int ix = cell % cols;
    const int iy = cell / cols;
    for (int dy = -1; dy <= 1; ++dy) {
      for (int dx = -1; dx <= 1; ++dx) {
        if (dx == 0 && dy == 0) continue;
        const int nx = ix + dx;
        const int ny = iy + dy;
        if (nx < 0 || ny < 0 || nx >= cols || ny >= f.rows()) continue;
        const int n = ny * cols + nx;
        if (!grid.is_free(n)) continue;
        // No corner cutting.
        if (dx != 0 && dy != 0 &&
            (!grid.is_free(iy * cols + nx) || !grid.is_free(ny * cols + ix))) {
          continue;
        }
        const double step = (dx != 0 && dy != 0) ? std::numbers::sqrt2 : 1.0;
        const double nc = c + step * f.resolution();
        if (nc < cost[n]) {
          cost[n] = nc;
          parent[n] = cell;
          open.emplace(nc, n);
        }
      }
    }
  }
  if (cost[*g] == inf) return std::nullopt;

  std::vector<Point> raw{goal};
  for (int c = parent[*g]; c >= 0 && c != *s; c = parent[c]) raw.push_back(f.center(c));
  raw.push_back(w.robot_home);
  std::reverse(raw.begin(), raw.end());

  // Greedy shortcutting: jump to the farthest waypoint still in sight.
  std::vector<Point> path{raw.front()};
  std::size_t i = 0;
  while (i + 1 < raw.size()) {
    std::size_t j = raw.size() - 1;
    while (j > i + 1 && !line_of_sight(grid, raw[i], raw[j])) --j;
    path.push_back(raw[j]);
    i = j;
  }
  return path;
}

PolylineProjection project_on_polyline(Point p, const std::vector<Point>& line) {
  PolylineProjection best{std::numeric_limits<double>::infinity(), 0.0};
  if (line.size() == 1) return {distance(p, line.front()), 0.0};
  double walked = 0.0;
  for (std::size_t k = 0; k + 1 < line.size(); ++k) {
    const Point a = line[k];
    const Point ab = line[k + 1] - a;
    const double len2 = dot(ab, ab);
    const double t = len2 > 0.0 ? std::clamp(dot(p - a, ab) / len2, 0.0, 1.0) : 0.0;
    const double d = distance(p, a + t * ab);
    if (d < best.distance) best = {d, walked + t * std::sqrt(len2)};
    walked += std::sqrt(len2);
  }
  return best;
}

PlanOutcome distance_planner(WorldState& world, MotionOracle& oracle,
                             const Workspace& w, const DistanceConfig& cfg,
                             const PlannerOptions& opts) {
  RunContext run(world, oracle, w, opts);
  const int target = world.target_id();
  if (!world.target_detected()) return run.fail("target not detected");

  double width = cfg.initial_width;
  // Objects whose motion failed since the last removal wait for the scene
  // to change; the wider sweep offers other objects meanwhile.
  std::set<int> failed;
  run.log_simple("config", std::nullopt, fixed("width", width));
  while (true) {
    if (opts.deadline.expired()) return run.timeout();
    const auto path = end_effector_path(w, world.object(target).center, opts.resolution);
    if (!path) return run.fail("no end-effector path to target");

    std::vector<std::tuple<double, int>> blockers;
    for (const ObjectSpec& o : world.belief()) {
      if (o.id == target) continue;
      const PolylineProjection proj = project_on_polyline(o.center, *path);
      if (proj.distance < o.radius + 0.5 * width) blockers.emplace_back(proj.arc, o.id);
    }
    std::sort(blockers.begin(), blockers.end());
    std::optional<int> next;
    for (const auto& b : blockers) {
      if (!failed.contains(std::get<1>(b))) {
        next = std::get<1>(b);
        break;
      }
    }
    if (!next && !failed.contains(target)) next = target;
    if (!next) {
      if (width >= cfg.max_width - 1e-12) return run.fail("width limit reached");
      width = std::min(cfg.max_width, width + cfg.width_increment);
      run.log_simple("widen", std::nullopt, fixed("width", width));
      continue;
    }

    const auto verdict = run.query(*next);
    if (!verdict) return run.outcome();
    if (*verdict == Verdict::Success) {
      run.relocate(*next);
      if (*next == target) return run.done();
      failed.clear();
      const std::vector<int> fresh = world.sense(w);
      if (!fresh.empty()) {
        run.log_reveal(fresh);
        ++run.result.replans;
      }
    } else {
      if (width >= cfg.max_width - 1e-12) return run.fail("width limit reached");
      failed.insert(*next);
      width = std::min(cfg.max_width, width + cfg.width_increment);
      ++run.result.replans;
      run.log_simple("widen", *next, fixed("width", width));
    }
  }
}

std::vector<int> vfh_blockers(const WorldState& world, const Workspace& w,
                              int goal, double window_deg,
                              const std::set<int>& skip) {
  const ObjectSpec& g = world.object(goal);
  const Point home = w.robot_home;
  const double range = distance(home, g.center);
  const double heading = bearing(home, g.center);
  const double half_window = 0.5 * window_deg * std::numbers::pi / 180.0;
  const double sweep = g.radius + w.robot_radius + w.safety_margin;
  const Segment sight{home, g.center};

  std::vector<std::tuple<double, double, int>> found;
  for (const ObjectSpec& o : world.belief()) {
    if (o.id == goal || skip.contains(o.id)) continue;
    const double r = distance(home, o.center);
    if (r >= range) continue;
    if (angle_gap(bearing(home, o.center), heading) > half_window + 1e-12) continue;
    const double off = point_segment_distance(o.center, sight);
    if (off >= o.radius + sweep) continue;
    found.emplace_back(off, r, o.id);
  }
  std::sort(found.begin(), found.end());
  std::vector<int> ids;
  for (const auto& f : found) ids.push_back(std::get<2>(f));
  return ids;
}

std::optional<int> vfh_choose(const WorldState& world, const Workspace& w,
                              int goal, double window_deg,
                              const std::set<int>& skip) {
  // Blockers are strictly nearer than the goal, so the descent terminates.
  int current = goal;
  while (true) {
    const std::vector<int> blockers = vfh_blockers(world, w, current, window_deg, skip);
    if (blockers.empty()) {
      if (skip.contains(current)) return std::nullopt;
      return current;
    }
    std::optional<int> nearest;
    double nearest_range = std::numeric_limits<double>::infinity();
    for (int b : blockers) {
      if (!vfh_blockers(world, w, b, window_deg, skip).empty()) continue;
      const double r = distance(w.robot_home, world.object(b).center);
      if (r < nearest_range) {
        nearest_range = r;
        nearest = b;
      }
    }
    if (nearest) return nearest;
    current = blockers.front();
  }
}

PlanOutcome vfh_local_planner(WorldState& world, MotionOracle& oracle,
                              const Workspace& w, const VfhConfig& cfg,
                              const PlannerOptions& opts) {
  RunContext run(world, oracle, w, opts);
  const int target = world.target_id();
  if (!world.target_detected()) return run.fail("target not detected");

  double window = std::min(cfg.initial_angle_deg, cfg.max_angle_deg);
  std::set<int> failed;
  run.log_simple("config", std::nullopt, fixed("angle", window));
  while (true) {
    if (opts.deadline.expired()) return run.timeout();
    const std::optional<int> next = vfh_choose(world, w, target, window, failed);
    if (!next) {
      if (window >= cfg.max_angle_deg - 1e-9) return run.fail("no accessible blocker");
      window = std::min(cfg.max_angle_deg, window + cfg.angle_increment_deg);
      run.log_simple("widen", std::nullopt, fixed("angle", window));
      continue;
    }
    const auto verdict = run.query(*next);
    if (!verdict) return run.outcome();
    if (*verdict == Verdict::Success) {
      run.relocate(*next);
      if (*next == target) return run.done();
      failed.clear();
      const std::vector<int> fresh = world.sense(w);
      if (!fresh.empty()) {
        run.log_reveal(fresh);
        ++run.result.replans;
      }
    } else {
      if (window >= cfg.max_angle_deg - 1e-9) return run.fail("angle window exhausted");
      failed.insert(*next);
      window = std::min(cfg.max_angle_deg, window + cfg.angle_increment_deg);
      ++run.result.replans;
      run.log_simple("widen", *next, fixed("angle", window));
    }
  }
}

}  // namespace relocate
