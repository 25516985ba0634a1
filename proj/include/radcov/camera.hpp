#pragma once

#include "radcov/geometry.hpp"

namespace radcov {

/// World geometry is in meters; everything camera-side (focal length, pixel
/// pitch, depths) is in millimeters. Camera::local is the single crossing.
inline constexpr double kMillimetersPerMeter = 1000.0;

struct CameraIntrinsics {
  double focal_mm{0.0};
  double pixel_size_u_mm{0.0};
  double pixel_size_v_mm{0.0};
  double principal_u_px{0.0};
  double principal_v_px{0.0};
  double image_width_px{0.0};
  double image_height_px{0.0};
  double aperture_mm{0.0};
  double focus_distance_mm{0.0};
};

/// Throws std::invalid_argument naming the offending field.
void validate_intrinsics(const CameraIntrinsics& intrinsics);

/// Half-angles of the viewing pyramid, radians, all non-negative.
struct FovAngles {
  double left{0.0};
  double right{0.0};
  double top{0.0};
  double bottom{0.0};
};

FovAngles derive_fov_angles(const CameraIntrinsics& intrinsics);

/// Near and far limits of acceptable sharpness in millimeters. far_mm is
/// +infinity when the acceptable blur never recurs beyond the focus plane.
struct DepthOfField {
  double near_mm{0.0};
  double far_mm{0.0};
};

DepthOfField depth_of_field(const CameraIntrinsics& intrinsics,
                            double confusion_px);

struct Frustum {
  FovAngles fov{};
  double tan_left{0.0};
  double tan_right{0.0};
  double tan_top{0.0};
  double tan_bottom{0.0};
  double near_mm{0.0};
  double far_mm{0.0};
  double confusion_px{0.0};
};

Frustum make_frustum(const CameraIntrinsics& intrinsics, double confusion_px);

/// Point is in camera coordinates, millimeters. Boundary rays count as
/// visible; the gate at z = 0 admits only the optical center's own ray.
bool in_fov(const Frustum& frustum, const Vec3& local_mm);

/// Depth gate, inclusive on both ends.
bool is_focused(const Frustum& frustum, double z_mm);

/// Radial strength of the resolution cue at depth z_mm. Unity at the depth
/// where one object millimeter spans one pixel. Throws for z_mm <= 0.
double resolution_criterion(const CameraIntrinsics& intrinsics, double z_mm);

struct Camera {
  CameraIntrinsics intrinsics{};
  Pose6 pose{};
  Frustum frustum{};
  Mat3 rotation{Mat3::Identity()};
  int id{0};

  /// World meters in, camera millimeters out.
  Vec3 local(const Vec3& world_m) const {
    return rotation * (world_m - pose.position) * kMillimetersPerMeter;
  }
};

Camera make_camera(const CameraIntrinsics& intrinsics, const Pose6& pose,
                   double confusion_px, int id);

}  // namespace radcov
