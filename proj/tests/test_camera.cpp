#include <doctest.h>

#include <cmath>
#include <limits>
#include <stdexcept>

#include "radcov/camera.hpp"
#include "test_support.hpp"

using namespace radcov;
using testsup::bench_intrinsics;
using testsup::kConfusionPx;
using testsup::unit_tan_intrinsics;

TEST_SUITE("camera") {

TEST_CASE("field-of-view half-angles for the reference rig") {
  const FovAngles fov = derive_fov_angles(bench_intrinsics());
  // atan(800 * 0.0053 / 5) and atan(600 * 0.0053 / 5).
  CHECK(fov.left == doctest::Approx(0.703331814649324).epsilon(1e-12));
  CHECK(fov.right == doctest::Approx(0.703331814649324).epsilon(1e-12));
  CHECK(fov.top == doctest::Approx(0.566470351363096).epsilon(1e-12));
  CHECK(fov.bottom == doctest::Approx(0.566470351363096).epsilon(1e-12));
}

TEST_CASE("off-center principal point skews the half-angles") {
  CameraIntrinsics in = unit_tan_intrinsics();
  in.principal_u_px = 0.5;
  const FovAngles fov = derive_fov_angles(in);
  CHECK(fov.left == doctest::Approx(std::atan(0.5)).epsilon(1e-15));
  CHECK(fov.right == doctest::Approx(std::atan(1.5)).epsilon(1e-15));
}

TEST_CASE("depth of field for the reference rig has no far limit") {
  const DepthOfField dof = depth_of_field(bench_intrinsics(), kConfusionPx);
  // 30000 / (25 + 5 * 0.0053 * 1195).
  CHECK(dof.near_mm == doctest::Approx(529.403979353245).epsilon(1e-12));
  CHECK(std::isinf(dof.far_mm));
  CHECK(dof.far_mm > 0.0);
}

TEST_CASE("depth of field with a finite far limit") {
  CameraIntrinsics in;
  in.focal_mm = 10.0;
  in.pixel_size_u_mm = 0.01;
  in.pixel_size_v_mm = 0.01;
  in.principal_u_px = 100.0;
  in.principal_v_px = 100.0;
  in.image_width_px = 200.0;
  in.image_height_px = 200.0;
  in.aperture_mm = 10.0;
  in.focus_distance_mm = 110.0;
  const DepthOfField dof = depth_of_field(in, 5.0);
  CHECK(dof.near_mm == doctest::Approx(11000.0 / 105.0).epsilon(1e-12));
  CHECK(dof.far_mm == doctest::Approx(11000.0 / 95.0).epsilon(1e-12));
  // The focus plane sits strictly inside the sharp band.
  CHECK(dof.near_mm < in.focus_distance_mm);
  CHECK(in.focus_distance_mm < dof.far_mm);
  CHECK(is_focused(make_frustum(in, 5.0), in.focus_distance_mm));
}

TEST_CASE("mismatched pixel pitch uses the finer pitch for blur") {
  CameraIntrinsics in = bench_intrinsics();
  in.pixel_size_v_mm = 0.0106;  // coarser rows; blur budget still 5 * 0.0053
  const DepthOfField dof = depth_of_field(in, kConfusionPx);
  CHECK(dof.near_mm == doctest::Approx(529.403979353245).epsilon(1e-12));
}

TEST_CASE("frustum boundary rays are visible") {
  const Frustum fr = make_frustum(unit_tan_intrinsics(), 1.0);
  CHECK(fr.tan_left == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(fr.tan_right == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(fr.tan_top == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(fr.tan_bottom == doctest::Approx(1.0).epsilon(1e-15));

  CHECK(in_fov(fr, Vec3(0, 0, 1)));
  CHECK(in_fov(fr, Vec3(-1, 0, 1)));
  CHECK(in_fov(fr, Vec3(1, 0, 1)));
  CHECK(in_fov(fr, Vec3(0, -1, 1)));
  CHECK(in_fov(fr, Vec3(0, 1, 1)));
  CHECK(in_fov(fr, Vec3(1, 1, 1)));
  CHECK_FALSE(in_fov(fr, Vec3(1.0000001, 0, 1)));
  CHECK_FALSE(in_fov(fr, Vec3(-1.0000001, 0, 1)));
  CHECK_FALSE(in_fov(fr, Vec3(0, 1.0000001, 1)));
  CHECK_FALSE(in_fov(fr, Vec3(0, 0, -1e-12)));
  // At zero depth only the optical center's own ray survives the gates.
  CHECK(in_fov(fr, Vec3(0, 0, 0)));
  CHECK_FALSE(in_fov(fr, Vec3(1e-9, 0, 0)));
}

TEST_CASE("focus gate is inclusive on both ends") {
  Frustum fr;
  fr.near_mm = 100.0;
  fr.far_mm = 200.0;
  CHECK(is_focused(fr, 100.0));
  CHECK(is_focused(fr, 200.0));
  CHECK(is_focused(fr, 150.0));
  CHECK_FALSE(is_focused(fr, 99.999999));
  CHECK_FALSE(is_focused(fr, 200.000001));
  fr.far_mm = std::numeric_limits<double>::infinity();
  CHECK(is_focused(fr, 1e18));
}

TEST_CASE("resolution strength for the reference rig") {
  const CameraIntrinsics in = bench_intrinsics();
  // 5 * 1200 / (1195 * 1200 * 0.0053).
  CHECK(resolution_criterion(in, 1200.0) ==
        doctest::Approx(0.789452909133970).epsilon(1e-12));
  // Unity where one millimeter of subject spans one pixel.
  CHECK(resolution_criterion(in, 947.343490960764) ==
        doctest::Approx(1.0).epsilon(1e-12));
  // Inverse proportionality in depth.
  CHECK(resolution_criterion(in, 600.0) ==
        doctest::Approx(2.0 * resolution_criterion(in, 1200.0)).epsilon(1e-12));
  CHECK_THROWS_AS(resolution_criterion(in, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(resolution_criterion(in, -5.0), std::invalid_argument);
}

TEST_CASE("resolution strength uses the coarser pitch") {
  CameraIntrinsics in = bench_intrinsics();
  in.pixel_size_v_mm = 0.0106;
  CHECK(resolution_criterion(in, 1200.0) ==
        doctest::Approx(0.5 * 0.789452909133970).epsilon(1e-12));
}

TEST_CASE("intrinsics validation names the offending field") {
  const auto broken = [](auto mutate) {
    CameraIntrinsics in = bench_intrinsics();
    mutate(in);
    return in;
  };
  CHECK_THROWS_WITH_AS(
      validate_intrinsics(broken([](auto& in) { in.focal_mm = 0.0; })),
      doctest::Contains("focal_mm"), std::invalid_argument);
  CHECK_THROWS_WITH_AS(
      validate_intrinsics(broken([](auto& in) { in.pixel_size_u_mm = -1.0; })),
      doctest::Contains("pixel_size_u_mm"), std::invalid_argument);
  CHECK_THROWS_WITH_AS(
      validate_intrinsics(broken([](auto& in) { in.principal_u_px = 1601.0; })),
      doctest::Contains("principal_u_px"), std::invalid_argument);
  CHECK_THROWS_WITH_AS(
      validate_intrinsics(broken([](auto& in) { in.aperture_mm = 0.0; })),
      doctest::Contains("aperture_mm"), std::invalid_argument);
  CHECK_THROWS_WITH_AS(
      validate_intrinsics(
          broken([](auto& in) { in.focus_distance_mm = in.focal_mm; })),
      doctest::Contains("focus_distance_mm"), std::invalid_argument);
  CHECK_THROWS_AS(depth_of_field(bench_intrinsics(), 0.0),
                  std::invalid_argument);
}

TEST_CASE("camera caches its rotation and converts to millimeters") {
  const Pose6 pose = make_pose(Vec3(0, -1, 0), 0.0, 0.0, 0.0);
  const Camera cam = make_camera(bench_intrinsics(), pose, kConfusionPx, 3);
  CHECK(cam.id == 3);
  CHECK((cam.rotation - rotation_matrix(pose)).norm() == 0.0);
  const Vec3 local = cam.local(Vec3(0, 1, 0));
  CHECK((local - Vec3(0, 0, 2000)).norm() <= 1e-9);
  CHECK(in_fov(cam.frustum, local));
  CHECK(is_focused(cam.frustum, local.z()));
}

}  // TEST_SUITE
