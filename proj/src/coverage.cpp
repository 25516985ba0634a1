#include "radcov/coverage.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace radcov {

namespace {
constexpr double kCoincidentM = 1e-12;
}

double elevation_angle(const DirectionalPoint& piece, const Vec3& camera_pos) {
  const Vec3 to_camera = camera_pos - piece.center;
  const double dist = to_camera.norm();
  if (dist <= kCoincidentM) {
    throw std::invalid_argument("elevation_angle: camera on the piece center");
  }
  const double c = std::clamp(piece.normal().dot(to_camera) / dist, -1.0, 1.0);
  return std::acos(c);
}

bool occlusion_criterion(const DirectionalPoint& piece, const Vec3& camera_pos,
                         const Scene& scene) {
  if (elevation_angle(piece, camera_pos) >= std::numbers::pi / 2.0) {
    return false;
  }
  for (const Vec3& corner : piece.vertices) {
    if (scene.occluders.blocked(corner, camera_pos, piece.id)) return false;
  }
  return true;
}

CoverageDecomposition radial_coverage_vector(const Camera& camera,
                                             const DirectionalPoint& piece,
                                             const Scene& scene) {
  const Vec3 offset = piece.center - camera.pose.position;
  const double dist = offset.norm();
  if (dist <= kCoincidentM) {
    throw std::invalid_argument(
        "radial_coverage_vector: camera on the piece center");
  }

  CoverageDecomposition out;
  out.elevation = elevation_angle(piece, camera.pose.position);

  const Vec3 local = camera.local(piece.center);
  if (!in_fov(camera.frustum, local)) return out;
  if (!is_focused(camera.frustum, local.z())) return out;
  if (out.elevation >= std::numbers::pi / 2.0) return out;
  for (const Vec3& corner : piece.vertices) {
    if (scene.occluders.blocked(corner, camera.pose.position, piece.id)) {
      return out;
    }
  }

  const double strength = resolution_criterion(camera.intrinsics, local.z());
  const Vec3 n = piece.normal();
  out.cv = strength * (offset / dist);
  out.cf = project_onto_plane(n, out.cv);
  out.cs = out.cv - out.cf;
  out.cs_norm = out.cs.norm();
  return out;
}

}  // namespace radcov
