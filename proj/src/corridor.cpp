#include "relocate/corridor.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace relocate {
namespace {

double wall_clearance(Point p, const Workspace& w) {
  double best = std::numeric_limits<double>::infinity();
  for (const Segment& s : w.walls()) {
    best = std::min(best, point_segment_distance(p, s));
  }
  return best;
}

// Visits every cell whose center may lie within `reach` of `c`.
template <class Fn>
void for_cells_near(const GridFrame& f, const Workspace& w, Point c,
                    double reach, Fn&& fn) {
  const double res = f.resolution();
  const double y0 = -w.apron_depth;
  const int ix0 = std::max(0, static_cast<int>(std::floor((c.x - reach) / res)) - 1);
  const int ix1 = std::min(f.cols() - 1, static_cast<int>(std::floor((c.x + reach) / res)) + 1);
  const int iy0 = std::max(0, static_cast<int>(std::floor((c.y - reach - y0) / res)) - 1);
  const int iy1 = std::min(f.rows() - 1, static_cast<int>(std::floor((c.y + reach - y0) / res)) + 1);
  for (int iy = iy0; iy <= iy1; ++iy) {
    for (int ix = ix0; ix <= ix1; ++ix) fn(iy * f.cols() + ix);
  }
}

template <class FreeFn>
bool flood_connected(const GridFrame& f, int start, int goal, FreeFn&& free) {
  if (!free(start) || !free(goal)) return false;
  if (start == goal) return true;
  std::vector<std::uint8_t> seen(static_cast<std::size_t>(f.size()), 0);
  std::vector<int> queue;
  queue.reserve(1024);
  queue.push_back(start);
  seen[start] = 1;
  const int cols = f.cols();
  const int rows = f.rows();
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const int c = queue[head];
    const int ix = c % cols;
    const int iy = c / cols;
    const int next[4] = {ix > 0 ? c - 1 : -1, ix + 1 < cols ? c + 1 : -1,
                         iy > 0 ? c - cols : -1, iy + 1 < rows ? c + cols : -1};
    for (int n : next) {
      if (n < 0 || seen[n] || !free(n)) continue;
      if (n == goal) return true;
      seen[n] = 1;
      queue.push_back(n);
    }
  }
  return false;
}

}  // namespace

GridFrame::GridFrame(const Workspace& w, double resolution)
    : origin_{0.0, -w.apron_depth}, resolution_(resolution) {
  if (!(resolution > 0.0)) {
    throw ConfigError("grid resolution must be positive");
  }
  if (resolution > w.length || resolution > w.width) {
    throw ConfigError("grid resolution " + std::to_string(resolution) +
                      " exceeds the workspace extent");
  }
  cols_ = static_cast<int>(std::ceil(w.length / resolution - 1e-9));
  rows_ = static_cast<int>(std::ceil((w.width + w.apron_depth) / resolution - 1e-9));
}

std::optional<int> GridFrame::cell_of(Point p) const {
  const double fx = (p.x - origin_.x) / resolution_;
  const double fy = (p.y - origin_.y) / resolution_;
  if (fx < 0.0 || fy < 0.0) return std::nullopt;
  int ix = static_cast<int>(std::floor(fx));
  int iy = static_cast<int>(std::floor(fy));
  // Points on the far boundary belong to the last cell.
  if (ix == cols_ && fx <= cols_ + 1e-9) ix = cols_ - 1;
  if (iy == rows_ && fy <= rows_ + 1e-9) iy = rows_ - 1;
  if (ix >= cols_ || iy >= rows_) return std::nullopt;
  return iy * cols_ + ix;
}

Point GridFrame::center(int cell) const {
  const int ix = cell % cols_;
  const int iy = cell / cols_;
  return {origin_.x + (ix + 0.5) * resolution_,
          origin_.y + (iy + 0.5) * resolution_};
}

GridOccupancy::GridOccupancy(double moving_radius,
                             std::span<const Disc> obstacles,
                             const Workspace& w, double resolution)
    : frame_(w, resolution), free_(static_cast<std::size_t>(frame_.size()), 1) {
  for (int c = 0; c < frame_.size(); ++c) {
    if (wall_clearance(frame_.center(c), w) < moving_radius) free_[c] = 0;
  }
  for (const Disc& d : obstacles) {
    const double reach = d.radius + moving_radius;
    for_cells_near(frame_, w, d.center, reach, [&](int c) {
      if (distance(frame_.center(c), d.center) - d.radius < moving_radius) {
        free_[c] = 0;
      }
    });
  }
}

bool GridOccupancy::is_free(Point p) const {
  const auto c = frame_.cell_of(p);
  return c && is_free(*c);
}

bool corridor_exists(const CorridorQuery& q, double resolution) {
  const GridOccupancy grid(q.moving_radius, q.obstacles, q.workspace,
                           resolution);
  const auto s = grid.frame().cell_of(q.start);
  const auto g = grid.frame().cell_of(q.goal);
  if (!s || !g) return false;
  return flood_connected(grid.frame(), *s, *g,
                         [&](int c) { return grid.is_free(c); });
}

bool point_accessible(Point p, double moving_radius,
                      std::span<const Disc> obstacles, const Workspace& w,
                      double resolution) {
  CorridorQuery q{moving_radius, w.robot_home, p, {}, w};
  for (const Disc& d : obstacles) {
    if (distance(d.center, p) > d.radius) q.obstacles.push_back(d);
  }
  return corridor_exists(q, resolution);
}

BlockerGrid::BlockerGrid(double moving_radius, std::span<const Disc> obstacles,
                         const Workspace& w, double resolution)
    : frame_(w, resolution),
      wall_blocked_(static_cast<std::size_t>(frame_.size()), 0),
      count_(static_cast<std::size_t>(frame_.size()), 0),
      first_(static_cast<std::size_t>(frame_.size()), -1),
      second_(static_cast<std::size_t>(frame_.size()), -1) {
  for (int c = 0; c < frame_.size(); ++c) {
    if (wall_clearance(frame_.center(c), w) < moving_radius) wall_blocked_[c] = 1;
  }
  for (std::size_t i = 0; i < obstacles.size(); ++i) {
    const Disc& d = obstacles[i];
    for_cells_near(frame_, w, d.center, d.radius + moving_radius, [&](int c) {
      if (distance(frame_.center(c), d.center) - d.radius >= moving_radius) return;
      if (count_[c] == 0) {
        first_[c] = static_cast<std::int32_t>(i);
      } else if (count_[c] == 1) {
        second_[c] = static_cast<std::int32_t>(i);
      }
      if (count_[c] < 3) ++count_[c];
    });
  }
}

bool BlockerGrid::cell_free(int c, int skip_a, int skip_b) const {
  if (wall_blocked_[c]) return false;
  switch (count_[c]) {
    case 0:
      return true;
    case 1:
      return first_[c] == skip_a || first_[c] == skip_b;
    case 2:
      return (first_[c] == skip_a || first_[c] == skip_b) &&
             (second_[c] == skip_a || second_[c] == skip_b);
    default:
      return false;
  }
}

bool BlockerGrid::connected(Point a, Point b, int skip_a, int skip_b) const {
  const auto s = frame_.cell_of(a);
  const auto g = frame_.cell_of(b);
  if (!s || !g) return false;
  return flood_connected(frame_, *s, *g,
                         [&](int c) { return cell_free(c, skip_a, skip_b); });
}

}  // namespace relocate
