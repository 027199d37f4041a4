#include "relocate/geometry.hpp"

#include <algorithm>
#include <cstdio>

namespace relocate {

void validate(const Workspace& w) {
  if (!(w.length > 0.0) || !(w.width > 0.0)) {
    throw ConfigError("workspace extent must be positive");
  }
  if (w.robot_radius < 0.0 || w.safety_margin < 0.0) {
    throw ConfigError("robot radius and safety margin must be non-negative");
  }
  if (!(w.apron_depth > 0.0)) {
    throw ConfigError("apron depth must be positive");
  }
  const Point h = w.robot_home;
  if (!(h.y < 0.0) || h.y < -w.apron_depth || h.x < 0.0 || h.x > w.length) {
    throw ConfigError("robot home must lie in front of the open edge, got " +
                      to_string(h));
  }
}

bool disc_overlaps(const Disc& a, const Disc& b) {
  return distance(a.center, b.center) < a.radius + b.radius;
}

bool disc_in_workspace(const Disc& d, const Workspace& w) {
  const Point c = d.center;
  return c.x - d.radius >= 0.0 && c.x + d.radius <= w.length &&
         c.y - d.radius >= 0.0 && c.y + d.radius <= w.width;
}

double point_segment_distance(Point p, const Segment& s) {
  const Point ab = s.b - s.a;
  const double len2 = dot(ab, ab);
  if (len2 == 0.0) return distance(p, s.a);
  const double t = std::clamp(dot(p - s.a, ab) / len2, 0.0, 1.0);
  return distance(p, s.a + t * ab);
}

double segment_disc_clearance(const Segment& s, const Disc& d) {
  return point_segment_distance(d.center, s) - d.radius;
}

std::string to_string(Point p) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "(%.6g, %.6g)", p.x, p.y);
  return buf;
}

}  // namespace relocate
