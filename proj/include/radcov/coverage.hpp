#pragma once

#include "radcov/camera.hpp"
#include "radcov/geometry.hpp"
#include "radcov/scene.hpp"

namespace radcov {

/// Radial coverage of one piece by one camera, split into the component in
/// the surface plane (cf) and the component along the surface normal (cs).
/// cs carries the recognition strength: cs_norm == cos(elevation) * |cv|.
/// When any visibility gate fails every vector is zero; elevation is always
/// the true viewing angle.
struct CoverageDecomposition {
  Vec3 cv{Vec3::Zero()};
  Vec3 cf{Vec3::Zero()};
  Vec3 cs{Vec3::Zero()};
  double cs_norm{0.0};
  double elevation{0.0};
};

/// Angle between the piece normal and the direction toward the camera.
/// Throws std::invalid_argument when the camera sits on the piece center.
double elevation_angle(const DirectionalPoint& piece, const Vec3& camera_pos);

/// True when the piece's front face is visible from the position: the
/// elevation stays below a quarter turn and no occluder cuts any of the
/// three sightlines to the piece's corners. Visibility is decided on the
/// corners alone; a sliver covering only the centroid does not hide a piece.
bool occlusion_criterion(const DirectionalPoint& piece, const Vec3& camera_pos,
                         const Scene& scene);

/// Full gated evaluation: field of view, then focus, then occlusion, then
/// the resolution-weighted direction toward the piece.
CoverageDecomposition radial_coverage_vector(const Camera& camera,
                                             const DirectionalPoint& piece,
                                             const Scene& scene);

}  // namespace radcov
