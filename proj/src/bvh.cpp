#include "radcov/bvh.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace radcov {

namespace {
constexpr double kEndpointToleranceM = 1e-9;
constexpr int kLeafSize = 4;
}  // namespace

bool segment_intersects_triangle(const Vec3& seg_a, const Vec3& seg_b,
                                 const Vec3& tri_a, const Vec3& tri_b,
                                 const Vec3& tri_c) {
  const Vec3 d = seg_b - seg_a;
  const double len = d.norm();
  if (len <= kEndpointToleranceM) return false;

  const Vec3 e1 = tri_b - tri_a;
  const Vec3 e2 = tri_c - tri_a;
  const Vec3 pvec = d.cross(e2);
  const double det = e1.dot(pvec);
  // Parallel or in-plane segments never block.
  if (std::abs(det) <= 1e-12 * len * e1.cross(e2).norm()) return false;

  const double inv_det = 1.0 / det;
  const Vec3 tvec = seg_a - tri_a;
  const double u = tvec.dot(pvec) * inv_det;
  if (u < 0.0 || u > 1.0) return false;
  const Vec3 qvec = tvec.cross(e1);
  const double v = d.dot(qvec) * inv_det;
  if (v < 0.0 || u + v > 1.0) return false;
  const double t = e2.dot(qvec) * inv_det;
  const double eps = kEndpointToleranceM / len;
  return t > eps && t < 1.0 - eps;
}

int segment_hit_count(const std::vector<Triangle>& triangles, const Vec3& seg_a,
                      const Vec3& seg_b) {
  int hits = 0;
  for (const Triangle& t : triangles) {
    if (segment_intersects_triangle(seg_a, seg_b, t.a, t.b, t.c)) ++hits;
  }
  return hits;
}

bool segment_blocked_brute(const std::vector<OccluderTriangle>& triangles,
                           const Vec3& seg_a, const Vec3& seg_b,
                           int exclude_object_piece_id) {
  for (const OccluderTriangle& t : triangles) {
    if (t.mesh_index == 0 && t.piece_id == exclude_object_piece_id) continue;
    if (segment_intersects_triangle(seg_a, seg_b, t.a, t.b, t.c)) return true;
  }
  return false;
}

namespace {

struct Box {
  Vec3 lo{Vec3::Constant(std::numeric_limits<double>::infinity())};
  Vec3 hi{Vec3::Constant(-std::numeric_limits<double>::infinity())};
  void add(const Vec3& p) {
    lo = lo.cwiseMin(p);
    hi = hi.cwiseMax(p);
  }
};

Box triangle_box(const OccluderTriangle& t) {
  Box b;
  b.add(t.a);
  b.add(t.b);
  b.add(t.c);
  return b;
}

bool segment_hits_box(const Vec3& origin, const Vec3& d, const Vec3& lo,
                      const Vec3& hi) {
  double t0 = 0.0, t1 = 1.0;
  for (int axis = 0; axis < 3; ++axis) {
    const double o = origin[axis];
    const double dir = d[axis];
    if (std::abs(dir) < 1e-300) {
      if (o < lo[axis] || o > hi[axis]) return false;
      continue;
    }
    double tn = (lo[axis] - o) / dir;
    double tf = (hi[axis] - o) / dir;
    if (tn > tf) std::swap(tn, tf);
    t0 = std::max(t0, tn);
    t1 = std::min(t1, tf);
    if (t0 > t1) return false;
  }
  return true;
}

}  // namespace

SegmentBvh::SegmentBvh(std::vector<OccluderTriangle> triangles)
    : triangles_(std::move(triangles)) {
  if (triangles_.empty()) return;
  nodes_.reserve(2 * triangles_.size());
  const int root = build(0, static_cast<int>(triangles_.size()));
  bounds_lo_ = nodes_[root].lo;
  bounds_hi_ = nodes_[root].hi;
}

int SegmentBvh::build(int first, int count) {
  Box bounds;
  Box centroid_bounds;
  for (int i = first; i < first + count; ++i) {
    const Box tb = triangle_box(triangles_[i]);
    bounds.add(tb.lo);
    bounds.add(tb.hi);
    centroid_bounds.add((triangles_[i].a + triangles_[i].b + triangles_[i].c) /
                        3.0);
  }
  const int index = static_cast<int>(nodes_.size());
  nodes_.push_back({bounds.lo, bounds.hi, -1, -1, first, count});
  if (count <= kLeafSize) return index;

  const Vec3 extent = centroid_bounds.hi - centroid_bounds.lo;
  int axis = 0;
  if (extent.y() > extent.x()) axis = 1;
  if (extent.z() > extent[axis]) axis = 2;
  const double mid = 0.5 * (centroid_bounds.lo[axis] + centroid_bounds.hi[axis]);

  const auto centroid = [axis](const OccluderTriangle& t) {
    return (t.a[axis] + t.b[axis] + t.c[axis]) / 3.0;
  };
  auto* base = triangles_.data();
  auto* split = std::partition(base + first, base + first + count,
                               [&](const OccluderTriangle& t) {
                                 return centroid(t) < mid;
                               });
  int left_count = static_cast<int>(split - (base + first));
  if (left_count == 0 || left_count == count) {
    // All centroids coincide along the chosen axis; halve by order instead.
    left_count = count / 2;
    std::nth_element(base + first, base + first + left_count,
                     base + first + count,
                     [&](const OccluderTriangle& lhs,
                         const OccluderTriangle& rhs) {
                       return centroid(lhs) < centroid(rhs);
                     });
  }
  const int left = build(first, left_count);
  const int right = build(first + left_count, count - left_count);
  nodes_[index].left = left;
  nodes_[index].right = right;
  nodes_[index].count = 0;
  return index;
}

bool SegmentBvh::blocked(const Vec3& seg_a, const Vec3& seg_b,
                         int exclude_object_piece_id) const {
  if (nodes_.empty()) return false;
  const Vec3 d = seg_b - seg_a;
  std::vector<int> stack;
  stack.reserve(64);
  stack.push_back(0);
  while (!stack.empty()) {
    const Node& node = nodes_[stack.back()];
    stack.pop_back();
    if (!segment_hits_box(seg_a, d, node.lo, node.hi)) continue;
    if (node.left < 0) {
      for (int i = node.first; i < node.first + node.count; ++i) {
        const OccluderTriangle& t = triangles_[i];
        if (t.mesh_index == 0 && t.piece_id == exclude_object_piece_id) {
          continue;
        }
        if (segment_intersects_triangle(seg_a, seg_b, t.a, t.b, t.c)) {
          return true;
        }
      }
    } else {
      stack.push_back(node.left);
      stack.push_back(node.right);
    }
  }
  return false;
}

}  // namespace radcov
