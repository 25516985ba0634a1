#include "radcov/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace radcov {

namespace {
constexpr double kPi = std::numbers::pi;
constexpr double kDegenerateArea = 1e-12;  // m^2
}  // namespace

double wrap_yaw(double alpha) {
  double a = std::fmod(alpha + kPi, 2.0 * kPi);
  if (a < 0.0) a += 2.0 * kPi;
  return a - kPi;
}

Pose6 make_pose(const Vec3& position, double alpha, double beta, double gamma) {
  if (!(std::isfinite(alpha) && std::isfinite(beta) && std::isfinite(gamma))) {
    throw std::invalid_argument("pose angles must be finite");
  }
  if (beta < -kPi / 2.0 || beta > kPi / 2.0) {
    throw std::invalid_argument("pitch outside [-pi/2, pi/2]: " + std::to_string(beta));
  }
  if (gamma < -kPi / 2.0 || gamma > kPi / 2.0) {
    throw std::invalid_argument("roll outside [-pi/2, pi/2]: " + std::to_string(gamma));
  }
  return Pose6{position, wrap_yaw(alpha), beta, gamma};
}

Mat3 rotation_matrix(double alpha, double beta, double gamma) {
  Mat3 base;
  base << 1, 0, 0,
          0, 0, -1,
          0, 1, 0;
  const double ca = std::cos(alpha), sa = std::sin(alpha);
  const double cb = std::cos(beta), sb = std::sin(beta);
  const double cg = std::cos(gamma), sg = std::sin(gamma);
  Mat3 ra, rb, rg;
  ra << ca, 0, sa,
        0, 1, 0,
        -sa, 0, ca;
  rb << 1, 0, 0,
        0, cb, -sb,
        0, sb, cb;
  rg << cg, -sg, 0,
        sg, cg, 0,
        0, 0, 1;
  return rg * rb * ra * base;
}

Mat3 rotation_matrix(const Pose6& pose) {
  return rotation_matrix(pose.alpha, pose.beta, pose.gamma);
}

Vec3 world_to_local(const Vec3& point, const Pose6& pose) {
  return rotation_matrix(pose) * (point - pose.position);
}

Vec3 local_to_world(const Vec3& point_local, const Pose6& pose) {
  return rotation_matrix(pose).transpose() * point_local + pose.position;
}

Vec3 project_onto_plane(const Vec3& normal, const Vec3& v) {
  const double n2 = normal.squaredNorm();
  if (n2 <= 0.0) {
    throw std::invalid_argument("project_onto_plane: zero normal");
  }
  return v - (normal.dot(v) / n2) * normal;
}

Vec3 normal_from_orientation(double rho, double eta) {
  const double sr = std::sin(rho);
  return Vec3(sr * std::cos(eta), sr * std::sin(eta), std::cos(rho));
}

std::pair<double, double> orientation_from_normal(const Vec3& n) {
  if (std::abs(n.norm() - 1.0) > 1e-9) {
    throw std::invalid_argument("orientation_from_normal: input is not unit length");
  }
  const double rho = std::acos(std::clamp(n.z(), -1.0, 1.0));
  const double planar = std::hypot(n.x(), n.y());
  double eta = planar <= 1e-12 ? 0.0 : std::atan2(n.y(), n.x());
  if (eta >= kPi) eta = -kPi;  // atan2 returns (-pi, pi]; canonical range is [-pi, pi)
  return {rho, eta};
}

Vec3 DirectionalPoint::normal() const { return normal_from_orientation(rho, eta); }

double triangle_area(const Vec3& a, const Vec3& b, const Vec3& c) {
  return 0.5 * (b - a).cross(c - a).norm();
}

DirectionalPoint make_directional_point(const Vec3& a, const Vec3& b,
                                        const Vec3& c, int id) {
  const Vec3 raw = (b - a).cross(c - a);
  const double norm = raw.norm();
  if (0.5 * norm <= kDegenerateArea) {
    throw std::invalid_argument("make_directional_point: degenerate triangle");
  }
  DirectionalPoint p;
  p.center = (a + b + c) / 3.0;
  const auto [rho, eta] = orientation_from_normal(raw / norm);
  p.rho = rho;
  p.eta = eta;
  p.mu = 0.0;
  p.vertices = {a, b, c};
  p.area = 0.5 * norm;
  p.id = id;
  return p;
}

namespace {

void subdivide(const Triangle& t, double sigma, std::vector<Triangle>& out) {
  if (triangle_area(t.a, t.b, t.c) <= sigma) {
    out.push_back(t);
    return;
  }
  const Vec3 ab = 0.5 * (t.a + t.b);
  const Vec3 bc = 0.5 * (t.b + t.c);
  const Vec3 ca = 0.5 * (t.c + t.a);
  subdivide({t.a, ab, ca}, sigma, out);
  subdivide({ab, t.b, bc}, sigma, out);
  subdivide({ca, bc, t.c}, sigma, out);
  subdivide({ab, bc, ca}, sigma, out);
}

}  // namespace

Mesh refine_mesh(const std::vector<Triangle>& triangles, double sigma) {
  if (!(sigma > 0.0)) {
    throw std::invalid_argument("refine_mesh: sigma must be positive");
  }
  for (std::size_t i = 0; i < triangles.size(); ++i) {
    const Triangle& t = triangles[i];
    if (triangle_area(t.a, t.b, t.c) <= kDegenerateArea) {
      throw std::invalid_argument("refine_mesh: degenerate triangle at index " +
                                  std::to_string(i));
    }
  }
  std::vector<Triangle> refined;
  refined.reserve(triangles.size());
  for (const Triangle& t : triangles) {
    subdivide(t, sigma, refined);
  }
  Mesh mesh;
  mesh.pieces.reserve(refined.size());
  int id = 1;
  double total = 0.0;
  for (const Triangle& t : refined) {
    mesh.pieces.push_back(make_directional_point(t.a, t.b, t.c, id++));
    total += mesh.pieces.back().area;
  }
  mesh.total_area = total;
  return mesh;
}

Pose6 look_at_pose(const Vec3& eye, const Vec3& target) {
  const Vec3 d = target - eye;
  const double len = d.norm();
  if (len <= 0.0) {
    throw std::invalid_argument("look_at_pose: eye equals target");
  }
  const Vec3 u = d / len;
  // Optical axis in the world frame is (-sin a cos b, cos a cos b, -sin b).
  const double beta = std::asin(std::clamp(-u.z(), -1.0, 1.0));
  const double alpha = (std::abs(u.x()) <= 1e-15 && std::abs(u.y()) <= 1e-15)
                           ? 0.0
                           : std::atan2(-u.x(), u.y());
  return make_pose(eye, alpha, beta, 0.0);
}

}  // namespace radcov
