#pragma once

#include <variant>
#include <vector>

#include "radcov/bvh.hpp"
#include "radcov/geometry.hpp"

namespace radcov {

/// Closed axis-aligned keep-out box; boundary points count as inside.
struct AabbRegion {
  Vec3 lo{Vec3::Zero()};
  Vec3 hi{Vec3::Zero()};
};

/// Closed vertical cylinder keep-out volume.
struct CylinderRegion {
  double axis_x{0.0};
  double axis_y{0.0};
  double radius{0.0};
  double z_min{0.0};
  double z_max{0.0};
};

using ForbiddenRegion = std::variant<AabbRegion, CylinderRegion>;

bool region_contains(const ForbiddenRegion& region, const Vec3& p);

struct Scene {
  Mesh object;
  std::vector<std::vector<Triangle>> obstacles;
  std::vector<ForbiddenRegion> forbidden_regions;
  SegmentBvh occluders;
};

/// Assembles the occlusion hierarchy over the object's pieces plus every
/// obstacle triangle. Obstacles keep their input triangulation.
Scene make_scene(Mesh object, std::vector<std::vector<Triangle>> obstacles,
                 std::vector<ForbiddenRegion> forbidden_regions);

/// Crossing-parity test against one closed obstacle mesh.
bool inside_obstacle(const std::vector<Triangle>& obstacle, const Vec3& p,
                     const Scene& scene);

}  // namespace radcov
