#pragma once

#include <vector>

#include "radcov/geometry.hpp"

namespace radcov {

/// Occluder soup entry. mesh_index 0 is the inspected object itself; larger
/// values are obstacle meshes. piece_id is only meaningful per mesh.
struct OccluderTriangle {
  Vec3 a{Vec3::Zero()};
  Vec3 b{Vec3::Zero()};
  Vec3 c{Vec3::Zero()};
  int mesh_index{0};
  int piece_id{0};
};

/// Open-segment test against a closed triangle. Hits within 1e-9 m of either
/// endpoint are ignored so rays anchored on a shared vertex or edge of the
/// surface do not self-occlude. Segments parallel to or inside the triangle's
/// plane never hit.
bool segment_intersects_triangle(const Vec3& seg_a, const Vec3& seg_b,
                                 const Vec3& tri_a, const Vec3& tri_b,
                                 const Vec3& tri_c);

/// Number of triangles the open segment crosses. Used for parity tests
/// against closed meshes.
int segment_hit_count(const std::vector<Triangle>& triangles, const Vec3& seg_a,
                      const Vec3& seg_b);

/// Reference implementation of SegmentBvh::blocked for differential tests.
bool segment_blocked_brute(const std::vector<OccluderTriangle>& triangles,
                           const Vec3& seg_a, const Vec3& seg_b,
                           int exclude_object_piece_id);

/// Axis-aligned hierarchy over the occluder soup for visibility queries.
class SegmentBvh {
 public:
  SegmentBvh() = default;
  explicit SegmentBvh(std::vector<OccluderTriangle> triangles);

  /// True when any triangle other than the excluded object piece crosses the
  /// open segment. Pass a non-matching id (e.g. -1) to exclude nothing; the
  /// exclusion never applies to obstacle triangles.
  bool blocked(const Vec3& seg_a, const Vec3& seg_b,
               int exclude_object_piece_id) const;

  std::size_t size() const { return triangles_.size(); }
  const std::vector<OccluderTriangle>& triangles() const { return triangles_; }

  /// Bounds of everything in the hierarchy; only valid when size() > 0.
  Vec3 bounds_lo() const { return bounds_lo_; }
  Vec3 bounds_hi() const { return bounds_hi_; }

 private:
  struct Node {
    Vec3 lo{Vec3::Zero()};
    Vec3 hi{Vec3::Zero()};
    int left{-1};
    int right{-1};
    int first{0};
    int count{0};
  };

  int build(int first, int count);

  std::vector<OccluderTriangle> triangles_;
  std::vector<Node> nodes_;
  Vec3 bounds_lo_{Vec3::Zero()};
  Vec3 bounds_hi_{Vec3::Zero()};
};

}  // namespace radcov
