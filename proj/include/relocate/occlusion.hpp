#pragma once

#include <numbers>
#include <set>
#include <span>
#include <vector>

#include "relocate/geometry.hpp"

namespace relocate {

/// Fixed camera in front of the shelf. Only the planar position is used for
/// sight lines; `height` must clear every object.
struct CameraModel {
  double x = 0.45;
  double y = -0.20;
  double height = 0.30;
  /// Bearings (radians, atan2 convention) the camera can see.
  double fov_min = 0.0;
  double fov_max = std::numbers::pi;

  Point planar() const { return {x, y}; }
};

/// Throws ConfigError when the camera sits inside the shelf rectangle or is
/// not taller than the tallest object.
void validate(const CameraModel& cam, const Workspace& w,
              std::span<const ObjectSpec> objects);

using Polygon = std::vector<Point>;

/// Occluded part of the shelf: the union of the shadow wedges cast by the
/// objects, clipped to the shelf rectangle.
struct ShadowRegion {
  /// One clipped wedge per occluder, for drawing. Wedges may overlap.
  std::vector<Polygon> wedges;
  /// Area of the union, m^2.
  double area = 0.0;
  /// area * reference_height, m^3.
  double volume = 0.0;
  /// Mean object height of the scene.
  double reference_height = 0.0;
};

/// True when `p` lies behind `d` as seen from `camera`: the sight segment
/// from the camera to `p` meets the disc and `p` is outside the disc.
bool in_shadow_of(Point p, const Disc& d, Point camera);

/// Area of the union of shadow wedges of `discs`, clipped to the shelf.
/// Evaluated as a polar integral around the camera.
double shadow_area(std::span<const Disc> discs, Point camera,
                   const Workspace& w);

/// Wedge of one disc as a polygon clipped to the shelf. The near boundary
/// is the back arc of the disc, sampled with `arc_segments` chords.
Polygon shadow_wedge(const Disc& d, Point camera, const Workspace& w,
                     int arc_segments = 48);

ShadowRegion shadow_region(std::span<const ObjectSpec> objects,
                           const CameraModel& cam, const Workspace& w);

/// Ids of objects with at least one of `boundary_samples` boundary points
/// inside the field of view and outside every other object's shadow.
std::set<int> detected_objects(std::span<const ObjectSpec> objects,
                               const CameraModel& cam, const Workspace& w,
                               int boundary_samples = 360);

/// Decrease of occluded volume if object `id` were removed. Both volumes
/// use the reference height of the full `objects` list.
double revealed_volume(int id, std::span<const ObjectSpec> objects,
                       const CameraModel& cam, const Workspace& w);

/// Clips `poly` to the axis-aligned rectangle [x0,x1] x [y0,y1].
Polygon clip_to_rect(const Polygon& poly, double x0, double y0, double x1,
                     double y1);

double polygon_area(const Polygon& poly);

}  // namespace relocate
