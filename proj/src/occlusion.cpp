#include "relocate/occlusion.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

namespace relocate {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kMaxPiece = 0.002;  // radians per quadrature panel

// 5-point Gauss-Legendre on [-1, 1].
constexpr std::array<double, 5> kGaussX = {
    -0.9061798459386640, -0.5384693101056831, 0.0, 0.5384693101056831,
    0.9061798459386640};
constexpr std::array<double, 5> kGaussW = {
    0.2369268850561891, 0.4786286704993665, 0.5688888888888889,
    0.4786286704993665, 0.2369268850561891};

double wrap(double a) {
  while (a > kPi) a -= 2.0 * kPi;
  while (a <= -kPi) a += 2.0 * kPi;
  return a;
}

Point unit(double angle) { return {std::cos(angle), std::sin(angle)}; }

// Parameter interval of the ray cam + t*u inside the shelf rectangle.
bool ray_rect(Point cam, Point u, const Workspace& w, double& t_in,
              double& t_out) {
  t_in = 0.0;
  t_out = std::numeric_limits<double>::infinity();
  const double lo[2] = {0.0, 0.0};
  const double hi[2] = {w.length, w.width};
  const double o[2] = {cam.x, cam.y};
  const double d[2] = {u.x, u.y};
  for (int k = 0; k < 2; ++k) {
    if (std::abs(d[k]) < 1e-15) {
      if (o[k] < lo[k] || o[k] > hi[k]) return false;
      continue;
    }
    double t1 = (lo[k] - o[k]) / d[k];
    double t2 = (hi[k] - o[k]) / d[k];
    if (t1 > t2) std::swap(t1, t2);
    t_in = std::max(t_in, t1);
    t_out = std::min(t_out, t2);
  }
  return t_in < t_out;
}

struct PolarDisc {
  double bearing;  // relative to the reference direction
  double dist;
  double radius;
  double half;     // angular half-width
};

// Quadrature panels are split at the tangent angles of `break_discs`, which
// lets two integrals over nested disc sets share their sample angles.
double integrate_shadow(std::span<const Disc> discs,
                        std::span<const Disc> break_discs, Point camera,
                        const Workspace& w) {
  if (discs.empty()) return 0.0;
  if (w.contains(camera)) {
    throw ConfigError("camera must be outside the workspace");
  }
  const Point mid{0.5 * w.length, 0.5 * w.width};
  const double ref = std::atan2(mid.y - camera.y, mid.x - camera.x);

  const Point corners[4] = {{0.0, 0.0}, {w.length, 0.0}, {w.length, w.width},
                            {0.0, w.width}};
  double lo = kPi;
  double hi = -kPi;
  for (Point c : corners) {
    const double a = wrap(std::atan2(c.y - camera.y, c.x - camera.x) - ref);
    lo = std::min(lo, a);
    hi = std::max(hi, a);
  }

  std::vector<PolarDisc> polar;
  polar.reserve(discs.size());
  auto to_polar = [&](const Disc& d) {
    const Point rel = d.center - camera;
    const double dist = norm(rel);
    if (dist <= d.radius) {
      throw ConfigError("camera lies inside an object footprint");
    }
    return PolarDisc{wrap(std::atan2(rel.y, rel.x) - ref), dist, d.radius,
                     std::asin(d.radius / dist)};
  };
  for (const Disc& d : discs) polar.push_back(to_polar(d));
  std::vector<double> breaks = {lo, hi};
  for (const Disc& d : break_discs) {
    const PolarDisc p = to_polar(d);
    for (double b : {p.bearing - p.half, p.bearing + p.half}) {
      if (b > lo && b < hi) breaks.push_back(b);
    }
  }
  std::sort(breaks.begin(), breaks.end());

  auto integrand = [&](double phi) {
    const Point u = unit(ref + phi);
    double t_in = 0.0;
    double t_out = 0.0;
    if (!ray_rect(camera, u, w, t_in, t_out)) return 0.0;
    double t_exit = std::numeric_limits<double>::infinity();
    for (const PolarDisc& d : polar) {
      const double a = wrap(phi - d.bearing);
      if (std::abs(a) > d.half) continue;
      const double s = d.dist * std::sin(a);
      const double chord = std::sqrt(std::max(0.0, d.radius * d.radius - s * s));
      t_exit = std::min(t_exit, d.dist * std::cos(a) + chord);
    }
    const double start = std::max(t_exit, t_in);
    if (start >= t_out) return 0.0;
    return 0.5 * (t_out * t_out - start * start);
  };

  double area = 0.0;
  for (std::size_t k = 0; k + 1 < breaks.size(); ++k) {
    const double a = breaks[k];
    const double b = breaks[k + 1];
    if (b - a <= 0.0) continue;
    const int pieces = std::max(1, static_cast<int>(std::ceil((b - a) / kMaxPiece)));
    const double h = (b - a) / pieces;
    for (int p = 0; p < pieces; ++p) {
      const double m = a + (p + 0.5) * h;
      for (std::size_t g = 0; g < kGaussX.size(); ++g) {
        area += 0.5 * h * kGaussW[g] * integrand(m + 0.5 * h * kGaussX[g]);
      }
    }
  }
  return area;
}

}  // namespace

double shadow_area(std::span<const Disc> discs, Point camera,
                   const Workspace& w) {
  return integrate_shadow(discs, discs, camera, w);
}

void validate(const CameraModel& cam, const Workspace& w,
              std::span<const ObjectSpec> objects) {
  if (w.contains(cam.planar())) {
    throw ConfigError("camera must be outside the workspace, got " +
                      to_string(cam.planar()));
  }
  for (const ObjectSpec& o : objects) {
    if (!(cam.height > o.height)) {
      throw ConfigError("camera height must exceed every object height");
    }
  }
}

bool in_shadow_of(Point p, const Disc& d, Point camera) {
  if (distance(p, d.center) <= d.radius) return false;
  return point_segment_distance(d.center, {camera, p}) <= d.radius;
}

Polygon clip_to_rect(const Polygon& poly, double x0, double y0, double x1,
                     double y1) {
  // Sutherland-Hodgman against the four half-planes.
  auto clip = [](const Polygon& in, auto inside, auto cut) {
    Polygon out;
    if (in.empty()) return out;
    Point prev = in.back();
    bool prev_in = inside(prev);
    for (Point cur : in) {
      const bool cur_in = inside(cur);
      if (cur_in != prev_in) out.push_back(cut(prev, cur));
      if (cur_in) out.push_back(cur);
      prev = cur;
      prev_in = cur_in;
    }
    return out;
  };
  auto cut_x = [](double x) {
    return [x](Point a, Point b) {
      const double t = (x - a.x) / (b.x - a.x);
      return Point{x, a.y + t * (b.y - a.y)};
    };
  };
  auto cut_y = [](double y) {
    return [y](Point a, Point b) {
      const double t = (y - a.y) / (b.y - a.y);
      return Point{a.x + t * (b.x - a.x), y};
    };
  };
  Polygon out = poly;
  out = clip(out, [x0](Point p) { return p.x >= x0; }, cut_x(x0));
  out = clip(out, [x1](Point p) { return p.x <= x1; }, cut_x(x1));
  out = clip(out, [y0](Point p) { return p.y >= y0; }, cut_y(y0));
  out = clip(out, [y1](Point p) { return p.y <= y1; }, cut_y(y1));
  return out;
}

double polygon_area(const Polygon& poly) {
  double twice = 0.0;
  for (std::size_t i = 0; i < poly.size(); ++i) {
    twice += cross(poly[i], poly[(i + 1) % poly.size()]);
  }
  return 0.5 * std::abs(twice);
}

Polygon shadow_wedge(const Disc& d, Point camera, const Workspace& w,
                     int arc_segments) {
  const Point rel = d.center - camera;
  const double dist = norm(rel);
  if (dist <= d.radius) return {};
  const double away = std::atan2(rel.y, rel.x);
  // Tangent points sit at +-(pi - acos(r/d)) from the far-side direction.
  const double spread = kPi - std::acos(d.radius / dist);
  const double far = 4.0 * (w.length + w.width + dist);

  Polygon poly;
  poly.reserve(static_cast<std::size_t>(arc_segments) + 3);
  for (int k = 0; k <= arc_segments; ++k) {
    const double a = away - spread + 2.0 * spread * k / arc_segments;
    poly.push_back(d.center + d.radius * unit(a));
  }
  const Point t_hi = poly.back();
  const Point t_lo = poly.front();
  poly.push_back(camera + (far / norm(t_hi - camera)) * (t_hi - camera));
  poly.push_back(camera + (far / norm(t_lo - camera)) * (t_lo - camera));
  return clip_to_rect(poly, 0.0, 0.0, w.length, w.width);
}

ShadowRegion shadow_region(std::span<const ObjectSpec> objects,
                           const CameraModel& cam, const Workspace& w) {
  if (w.contains(cam.planar())) {
    throw ConfigError("camera must be outside the workspace, got " +
                      to_string(cam.planar()));
  }
  ShadowRegion region;
  if (objects.empty()) return region;
  std::vector<Disc> discs;
  double height_sum = 0.0;
  for (const ObjectSpec& o : objects) {
    discs.push_back(o.footprint());
    height_sum += o.height;
    Polygon wedge = shadow_wedge(o.footprint(), cam.planar(), w);
    if (wedge.size() >= 3) region.wedges.push_back(std::move(wedge));
  }
  region.reference_height = height_sum / static_cast<double>(objects.size());
  region.area = shadow_area(discs, cam.planar(), w);
  region.volume = region.area * region.reference_height;
  return region;
}

std::set<int> detected_objects(std::span<const ObjectSpec> objects,
                               const CameraModel& cam, const Workspace& /*w*/,
                               int boundary_samples) {
  std::set<int> detected;
  const Point c = cam.planar();
  for (const ObjectSpec& o : objects) {
    for (int k = 0; k < boundary_samples; ++k) {
      const double a = 2.0 * kPi * k / boundary_samples;
      const Point p = o.center + o.radius * unit(a);
      const double bearing = std::atan2(p.y - c.y, p.x - c.x);
      if (bearing < cam.fov_min || bearing > cam.fov_max) continue;
      const bool blocked = std::any_of(
          objects.begin(), objects.end(), [&](const ObjectSpec& other) {
            return other.id != o.id && in_shadow_of(p, other.footprint(), c);
          });
      if (!blocked) {
        detected.insert(o.id);
        break;
      }
    }
  }
  return detected;
}

double revealed_volume(int id, std::span<const ObjectSpec> objects,
                       const CameraModel& cam, const Workspace& w) {
  std::vector<Disc> all;
  std::vector<Disc> rest;
  double height_sum = 0.0;
  bool found = false;
  for (const ObjectSpec& o : objects) {
    all.push_back(o.footprint());
    height_sum += o.height;
    if (o.id == id) {
      found = true;
    } else {
      rest.push_back(o.footprint());
    }
  }
  if (!found) {
    throw LookupError("revealed_volume: unknown object id " + std::to_string(id));
  }
  const double h_ref = height_sum / static_cast<double>(objects.size());
  const double diff = integrate_shadow(all, all, cam.planar(), w) -
                      integrate_shadow(rest, all, cam.planar(), w);
  return std::max(0.0, diff) * h_ref;
}

}  // namespace relocate
