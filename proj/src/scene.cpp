#include "radcov/scene.hpp"

#include <cmath>
#include <utility>

namespace radcov {

bool region_contains(const ForbiddenRegion& region, const Vec3& p) {
  return std::visit(
      [&p](const auto& r) -> bool {
        using T = std::decay_t<decltype(r)>;
        if constexpr (std::is_same_v<T, AabbRegion>) {
          return p.x() >= r.lo.x() && p.x() <= r.hi.x() && p.y() >= r.lo.y() &&
                 p.y() <= r.hi.y() && p.z() >= r.lo.z() && p.z() <= r.hi.z();
        } else {
          const double dx = p.x() - r.axis_x;
          const double dy = p.y() - r.axis_y;
          return dx * dx + dy * dy <= r.radius * r.radius &&
                 p.z() >= r.z_min && p.z() <= r.z_max;
        }
      },
      region);
}

Scene make_scene(Mesh object, std::vector<std::vector<Triangle>> obstacles,
                 std::vector<ForbiddenRegion> forbidden_regions) {
  std::vector<OccluderTriangle> soup;
  soup.reserve(object.pieces.size());
  for (const DirectionalPoint& piece : object.pieces) {
    soup.push_back({piece.vertices[0], piece.vertices[1], piece.vertices[2], 0,
                    piece.id});
  }
  for (std::size_t k = 0; k < obstacles.size(); ++k) {
    int local_id = 0;
    for (const Triangle& t : obstacles[k]) {
      soup.push_back({t.a, t.b, t.c, static_cast<int>(k) + 1, local_id++});
    }
  }
  Scene scene;
  scene.object = std::move(object);
  scene.obstacles = std::move(obstacles);
  scene.forbidden_regions = std::move(forbidden_regions);
  scene.occluders = SegmentBvh(std::move(soup));
  return scene;
}

bool inside_obstacle(const std::vector<Triangle>& obstacle, const Vec3& p,
                     const Scene& scene) {
  if (obstacle.empty()) return false;
  double reach = 1.0;
  if (scene.occluders.size() > 0) {
    reach += (scene.occluders.bounds_hi() - scene.occluders.bounds_lo()).norm();
    // Guarantee the far endpoint is outside even when p sits outside bounds.
    reach += (p - scene.occluders.bounds_lo()).norm();
  }
  // Fixed skew direction keeps the parity ray off axis-aligned edges.
  const Vec3 dir(0.2672612419124244, 0.5345224838248488, 0.8017837257372732);
  const Vec3 far_point = p + dir * (2.0 * reach);
  return segment_hit_count(obstacle, p, far_point) % 2 == 1;
}

}  // namespace radcov
