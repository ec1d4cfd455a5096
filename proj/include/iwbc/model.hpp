#pragma once

#include <string>
#include <vector>

#include "iwbc/types.hpp"

namespace iwbc {

enum class JointType { revolute, prismatic, floating };

/// One joint per link: joints[i] connects links[i] to its parent
/// (parent_link == -1 means the world). A floating joint, if present,
/// must be the root joint (index 0).
struct Joint {
  std::string name;
  JointType type = JointType::revolute;
  Vec3 axis = Vec3::UnitZ();  ///< unit axis in the child link frame
  int parent_link = -1;
  Isometry origin = Isometry::Identity();  ///< child frame at q = 0, in parent frame
};

struct Link {
  std::string name;
  double mass = 0.0;              ///< kg
  Vec3 com = Vec3::Zero();        ///< center of mass in link frame, m
  Mat3 inertia = Mat3::Identity();  ///< about com, in link frame, kg m^2
};

struct EndEffector {
  std::string name;
  int link = 0;
  Vec3 offset = Vec3::Zero();  ///< point in link frame, m
};

/// Kinematic tree with an optional 6-DoF floating root.
///
/// Velocity layout: a floating base contributes six leading coordinates,
/// base linear velocity in the world frame followed by base angular
/// velocity in the body frame; 1-DoF joints follow in link order.
/// Position layout: base position (3) + unit quaternion (w,x,y,z), then
/// the 1-DoF joint positions.
struct RobotModel {
  std::vector<Link> links;
  std::vector<Joint> joints;
  std::vector<EndEffector> end_effectors;

  /// Per-velocity-DoF hardware bounds. Floating-base coordinates are
  /// unbounded (+-inf). Sized nv().
  Vec qd_min, qd_max;
  /// Impulsive joint torque bounds, same layout as qd bounds.
  Vec dtau_min, dtau_max;

  double gravity = 9.81;  ///< m/s^2, acting along -z

  bool floating_base() const {
    return !joints.empty() && joints.front().type == JointType::floating;
  }
  int num_links() const { return static_cast<int>(links.size()); }
  int num_end_effectors() const { return static_cast<int>(end_effectors.size()); }

  /// Generalized position dimension (quaternion counts four entries).
  int nq() const { return floating_base() ? 7 + num_one_dof() : num_one_dof(); }
  /// Generalized velocity dimension.
  int nv() const { return floating_base() ? 6 + num_one_dof() : num_one_dof(); }
  int num_one_dof() const {
    int n = 0;
    for (const auto& j : joints)
      if (j.type != JointType::floating) ++n;
    return n;
  }

  /// First velocity coordinate driven by joint i (floating root owns 0..5).
  int dof_index(int joint) const;
  int ee_index(const std::string& name) const;
  int link_index(const std::string& name) const;

  /// Throws std::invalid_argument describing the first violated invariant.
  void validate() const;
};

}  // namespace iwbc
