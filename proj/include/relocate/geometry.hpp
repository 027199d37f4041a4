#pragma once

#include <array>
#include <cmath>
#include <stdexcept>
#include <string>

namespace relocate {

/// Raised when a caller hands in a configuration that cannot be planned on
/// (degenerate grid, camera inside the shelf, robot home inside the shelf).
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised on lookups of object or node ids that do not exist.
class LookupError : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

struct Point {
  double x = 0.0;
  double y = 0.0;

  friend Point operator+(Point a, Point b) { return {a.x + b.x, a.y + b.y}; }
  friend Point operator-(Point a, Point b) { return {a.x - b.x, a.y - b.y}; }
  friend Point operator*(double s, Point p) { return {s * p.x, s * p.y}; }
  friend bool operator==(Point a, Point b) = default;
};

inline double dot(Point a, Point b) { return a.x * b.x + a.y * b.y; }
inline double cross(Point a, Point b) { return a.x * b.y - a.y * b.x; }
inline double norm(Point p) { return std::hypot(p.x, p.y); }
inline double distance(Point a, Point b) { return norm(a - b); }

struct Segment {
  Point a;
  Point b;
};

/// Planar footprint of a cylinder.
struct Disc {
  Point center;
  double radius = 0.0;
};

/// A cylinder standing on the shelf floor. Lengths in meters.
struct ObjectSpec {
  int id = 0;
  Point center;
  double radius = 0.0;
  double height = 0.0;
  bool is_target = false;
  /// Ground truth: not visible from the camera at t=0.
  bool hidden = false;

  Disc footprint() const { return {center, radius}; }
};

/// Rectangular shelf [0, length] x [0, width] with walls on the left, right
/// and back sides. The edge y = 0 is open and faces the robot.
///
/// Planning happens on the shelf plus an apron strip of depth `apron_depth`
/// in front of the open edge, which is where the robot home pose and the
/// disposal zone live.
struct Workspace {
  double length = 0.9;
  double width = 0.45;
  Point robot_home{0.45, -0.10};
  double robot_radius = 0.05;
  double safety_margin = 0.005;
  double apron_depth = 0.20;

  std::array<Segment, 3> walls() const {
    return {Segment{{0.0, 0.0}, {0.0, width}},
            Segment{{0.0, width}, {length, width}},
            Segment{{length, width}, {length, 0.0}}};
  }

  Segment open_edge() const { return {{0.0, 0.0}, {length, 0.0}}; }

  /// Relocated objects leave through the open edge and are dropped next to
  /// the robot.
  Point disposal() const { return robot_home; }

  bool contains(Point p) const {
    return p.x >= 0.0 && p.x <= length && p.y >= 0.0 && p.y <= width;
  }
};

/// Throws ConfigError unless the rectangle is non-empty and the robot home
/// sits in the apron in front of the open edge.
void validate(const Workspace& w);

/// End-effector footprint radius while holding an object.
struct GraspedRadius {
  double value = 0.0;

  /// r_i + r_r, optionally padded with the safety margin r_s.
  static GraspedRadius of(double object_radius, const Workspace& w,
                          bool with_margin) {
    return {object_radius + w.robot_radius +
            (with_margin ? w.safety_margin : 0.0)};
  }
};

/// Strict overlap; tangent discs do not overlap.
bool disc_overlaps(const Disc& a, const Disc& b);

/// Disc lies inside the shelf rectangle (touching the boundary is allowed).
bool disc_in_workspace(const Disc& d, const Workspace& w);

double point_segment_distance(Point p, const Segment& s);

/// Distance from the segment to the disc boundary; negative when they
/// intersect.
double segment_disc_clearance(const Segment& s, const Disc& d);

std::string to_string(Point p);

}  // namespace relocate
