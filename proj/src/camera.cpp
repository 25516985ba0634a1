#include "radcov/camera.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace radcov {

void validate_intrinsics(const CameraIntrinsics& intrinsics) {
  const auto require = [](bool ok, const char* what) {
    if (!ok) throw std::invalid_argument(what);
  };
  require(intrinsics.focal_mm > 0.0, "intrinsics: focal_mm must be positive");
  require(intrinsics.pixel_size_u_mm > 0.0,
          "intrinsics: pixel_size_u_mm must be positive");
  require(intrinsics.pixel_size_v_mm > 0.0,
          "intrinsics: pixel_size_v_mm must be positive");
  require(intrinsics.image_width_px > 0.0,
          "intrinsics: image_width_px must be positive");
  require(intrinsics.image_height_px > 0.0,
          "intrinsics: image_height_px must be positive");
  require(intrinsics.principal_u_px >= 0.0 &&
              intrinsics.principal_u_px <= intrinsics.image_width_px,
          "intrinsics: principal_u_px outside the image");
  require(intrinsics.principal_v_px >= 0.0 &&
              intrinsics.principal_v_px <= intrinsics.image_height_px,
          "intrinsics: principal_v_px outside the image");
  require(intrinsics.aperture_mm > 0.0,
          "intrinsics: aperture_mm must be positive");
  require(intrinsics.focus_distance_mm > intrinsics.focal_mm,
          "intrinsics: focus_distance_mm must exceed focal_mm");
}

namespace {

struct FovTangents {
  double left, right, top, bottom;
};

FovTangents fov_tangents(const CameraIntrinsics& in) {
  const double f = in.focal_mm;
  return {in.principal_u_px * in.pixel_size_u_mm / f,
          (in.image_width_px - in.principal_u_px) * in.pixel_size_u_mm / f,
          in.principal_v_px * in.pixel_size_v_mm / f,
          (in.image_height_px - in.principal_v_px) * in.pixel_size_v_mm / f};
}

}  // namespace

FovAngles derive_fov_angles(const CameraIntrinsics& intrinsics) {
  validate_intrinsics(intrinsics);
  const FovTangents t = fov_tangents(intrinsics);
  return {std::atan(t.left), std::atan(t.right), std::atan(t.top),
          std::atan(t.bottom)};
}

DepthOfField depth_of_field(const CameraIntrinsics& intrinsics,
                            double confusion_px) {
  validate_intrinsics(intrinsics);
  if (!(confusion_px > 0.0)) {
    throw std::invalid_argument("depth_of_field: confusion_px must be positive");
  }
  const double f = intrinsics.focal_mm;
  const double da = intrinsics.aperture_mm;
  const double ds = intrinsics.focus_distance_mm;
  const double blur_mm = confusion_px * std::min(intrinsics.pixel_size_u_mm,
                                                 intrinsics.pixel_size_v_mm);
  const double numer = da * ds * f;
  const double near_den = da * f + blur_mm * (ds - f);
  const double far_den = da * f - blur_mm * (ds - f);
  DepthOfField dof;
  dof.near_mm = numer / near_den;
  dof.far_mm = far_den > 0.0 ? numer / far_den
                             : std::numeric_limits<double>::infinity();
  return dof;
}

Frustum make_frustum(const CameraIntrinsics& intrinsics, double confusion_px) {
  Frustum frustum;
  frustum.fov = derive_fov_angles(intrinsics);
  // Tangents come straight from the sensor geometry so exact boundary
  // comparisons survive; the angles above are the derived report.
  const FovTangents t = fov_tangents(intrinsics);
  frustum.tan_left = t.left;
  frustum.tan_right = t.right;
  frustum.tan_top = t.top;
  frustum.tan_bottom = t.bottom;
  const DepthOfField dof = depth_of_field(intrinsics, confusion_px);
  frustum.near_mm = dof.near_mm;
  frustum.far_mm = dof.far_mm;
  frustum.confusion_px = confusion_px;
  return frustum;
}

bool in_fov(const Frustum& frustum, const Vec3& local_mm) {
  const double x = local_mm.x();
  const double y = local_mm.y();
  const double z = local_mm.z();
  if (z < 0.0) return false;
  return x >= -frustum.tan_left * z && x <= frustum.tan_right * z &&
         y >= -frustum.tan_top * z && y <= frustum.tan_bottom * z;
}

bool is_focused(const Frustum& frustum, double z_mm) {
  return z_mm >= frustum.near_mm && z_mm <= frustum.far_mm;
}

double resolution_criterion(const CameraIntrinsics& intrinsics, double z_mm) {
  if (!(z_mm > 0.0)) {
    throw std::invalid_argument("resolution_criterion: depth must be positive");
  }
  const double f = intrinsics.focal_mm;
  const double ds = intrinsics.focus_distance_mm;
  const double pitch = std::max(intrinsics.pixel_size_u_mm,
                                intrinsics.pixel_size_v_mm);
  return f * ds / ((ds - f) * z_mm * pitch);
}

Camera make_camera(const CameraIntrinsics& intrinsics, const Pose6& pose,
                   double confusion_px, int id) {
  Camera camera;
  camera.intrinsics = intrinsics;
  camera.pose = pose;
  camera.frustum = make_frustum(intrinsics, confusion_px);
  camera.rotation = rotation_matrix(pose);
  camera.id = id;
  return camera;
}

}  // namespace radcov
