#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "relocate/geometry.hpp"

namespace relocate {

/// Default grid cell size in meters.
inline constexpr double kDefaultResolution = 0.005;

/// Uniform grid over the planning domain [0, length] x [-apron_depth, width].
class GridFrame {
 public:
  /// Throws ConfigError when the resolution is not positive or exceeds the
  /// shelf extent.
  GridFrame(const Workspace& w, double resolution);

  int cols() const { return cols_; }
  int rows() const { return rows_; }
  int size() const { return cols_ * rows_; }
  double resolution() const { return resolution_; }

  std::optional<int> cell_of(Point p) const;
  Point center(int cell) const;

 private:
  Point origin_;
  double resolution_;
  int cols_;
  int rows_;
};

/// Free-space bitmap for a disc of `moving_radius`: a cell is free iff its
/// center keeps at least `moving_radius` clearance from every obstacle disc
/// and every wall segment.
class GridOccupancy {
 public:
  GridOccupancy(double moving_radius, std::span<const Disc> obstacles,
                const Workspace& w, double resolution);

  const GridFrame& frame() const { return frame_; }
  bool is_free(int cell) const { return free_[cell] != 0; }
  bool is_free(Point p) const;

 private:
  GridFrame frame_;
  std::vector<std::uint8_t> free_;
};

struct CorridorQuery {
  double moving_radius = 0.0;
  Point start;
  Point goal;
  std::vector<Disc> obstacles;
  Workspace workspace;
};

/// True when a disc of q.moving_radius can travel from q.start to q.goal:
/// 4-connected flood fill over the occupancy grid. Start or goal in an
/// occupied cell yields false.
bool corridor_exists(const CorridorQuery& q,
                     double resolution = kDefaultResolution);

/// Corridor from the robot home to `p`, ignoring any obstacle disc that
/// contains `p` (the object being reached for).
bool point_accessible(Point p, double moving_radius,
                      std::span<const Disc> obstacles, const Workspace& w,
                      double resolution = kDefaultResolution);

/// Occupancy for many corridor queries over one obstacle set, each query
/// ignoring up to two of the obstacles. Each cell remembers which obstacles
/// block it, so a query costs one flood fill instead of a grid rebuild.
class BlockerGrid {
 public:
  BlockerGrid(double moving_radius, std::span<const Disc> obstacles,
              const Workspace& w, double resolution);

  /// Corridor between `a` and `b` with obstacles `skip_a` and `skip_b`
  /// (indices into the constructor's span, or -1) removed.
  bool connected(Point a, Point b, int skip_a, int skip_b) const;

  const GridFrame& frame() const { return frame_; }

 private:
  bool cell_free(int cell, int skip_a, int skip_b) const;

  GridFrame frame_;
  std::vector<std::uint8_t> wall_blocked_;
  std::vector<std::uint8_t> count_;
  std::vector<std::int32_t> first_;
  std::vector<std::int32_t> second_;
};

}  // namespace relocate
