#pragma once

#include <array>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace radcov {

using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;

/// Pose of a local frame measured in the world frame: position plus
/// yaw/pitch/roll. Yaw lives in [-pi, pi); pitch and roll in [-pi/2, pi/2].
struct Pose6 {
  Vec3 position{Vec3::Zero()};
  double alpha{0.0};  ///< yaw (rad)
  double beta{0.0};   ///< pitch (rad)
  double gamma{0.0};  ///< roll (rad)
};

/// Wraps a yaw angle into [-pi, pi).
double wrap_yaw(double alpha);

/// Builds a pose with yaw wrapped into range. Pitch or roll outside
/// [-pi/2, pi/2] is rejected (throws std::invalid_argument), not wrapped:
/// wrapping those would silently change the pose family.
Pose6 make_pose(const Vec3& position, double alpha, double beta, double gamma);

/// One triangle piece of the object model: centroid, front-face normal
/// direction as sphere angles (rho from +Z, eta around +Z; mu is the unused
/// in-plane angle, fixed to 0 by ingestion), the three vertices, the piece
/// area (used as relevance weight) and a 1-based id.
struct DirectionalPoint {
  Vec3 center{Vec3::Zero()};
  double rho{0.0};
  double eta{0.0};
  double mu{0.0};
  std::array<Vec3, 3> vertices{};
  double area{0.0};
  int id{0};

  /// Unit front-face normal reconstructed from (rho, eta).
  Vec3 normal() const;
};

/// Triangle soup element, as read from mesh files.
struct Triangle {
  Vec3 a{Vec3::Zero()};
  Vec3 b{Vec3::Zero()};
  Vec3 c{Vec3::Zero()};
};

/// Immutable after construction; safe to share across threads.
struct Mesh {
  std::vector<DirectionalPoint> pieces;
  double total_area{0.0};
};

/// World-to-local rotation: R = R^gamma * R^beta * R^alpha * B, where B is
/// the fixed axis permutation  [1 0 0; 0 0 -1; 0 1 0].  With zero angles the
/// local Z axis (camera optical axis) points along world +Y.
Mat3 rotation_matrix(double alpha, double beta, double gamma);
Mat3 rotation_matrix(const Pose6& pose);

/// s^l = R (s - position).
Vec3 world_to_local(const Vec3& point, const Pose6& pose);
Vec3 local_to_world(const Vec3& point_local, const Pose6& pose);

/// Projection of v onto the plane whose normal is `normal`:
/// v - (n^T v / |n|^2) n.  Zero normal throws std::invalid_argument.
Vec3 project_onto_plane(const Vec3& normal, const Vec3& v);

/// (sin rho cos eta, sin rho sin eta, cos rho).
Vec3 normal_from_orientation(double rho, double eta);

/// Inverse of normal_from_orientation for unit n (1e-9 tolerance, else
/// throws). rho in [0, pi], eta in [-pi, pi); eta is fixed to 0 at the poles.
std::pair<double, double> orientation_from_normal(const Vec3& n);

double triangle_area(const Vec3& a, const Vec3& b, const Vec3& c);

/// Builds a directional point from a counter-clockwise vertex triple.
/// The front face normal follows the right-hand rule on (b-a, c-a).
DirectionalPoint make_directional_point(const Vec3& a, const Vec3& b,
                                        const Vec3& c, int id);

/// Recursive midpoint 1-to-4 subdivision until every piece area is <= sigma.
/// Children are emitted corner-at-a, corner-at-b, corner-at-c, then center,
/// parents in input order, so output ordering is deterministic. Ids are
/// assigned 1..K in emission order. Degenerate inputs (area <= 1e-12 m^2)
/// throw std::invalid_argument naming the offending triangle index.
Mesh refine_mesh(const std::vector<Triangle>& triangles, double sigma);

/// Yaw/pitch aiming the local +Z (optical) axis from `eye` toward `target`,
/// roll fixed to 0. eye == target throws.
Pose6 look_at_pose(const Vec3& eye, const Vec3& target);

}  // namespace radcov
