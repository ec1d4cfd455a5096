#pragma once

#include <vector>

#include "iwbc/model.hpp"
#include "iwbc/state.hpp"

namespace iwbc {

/// Per-link world-frame kinematics, including the joint axis data needed
/// to assemble geometric Jacobians and their time derivatives.
struct LinkKin {
  Isometry X = Isometry::Identity();  ///< link frame in world
  Vec3 omega = Vec3::Zero();          ///< link angular velocity, world frame
  Vec3 v_origin = Vec3::Zero();       ///< velocity of the link frame origin
  Vec3 axis_w = Vec3::Zero();         ///< joint axis in world (1-DoF joints)
  Vec3 axis_dot_w = Vec3::Zero();
};

struct KinematicsData {
  std::vector<LinkKin> links;

  Vec3 point_position(int link, const Vec3& local) const {
    return links[link].X * local;
  }
  Vec3 point_velocity(int link, const Vec3& local) const {
    const auto& l = links[link];
    return l.v_origin + l.omega.cross(l.X * local - l.X.translation());
  }
};

/// World poses and velocities of every link. Throws on a state whose
/// dimensions do not match the model.
KinematicsData forward_kinematics(const RobotModel& model, const RobotState& state);

/// 3 x nv translational Jacobian of a point attached to `link`, expressed
/// in the world frame: point_velocity == J * qd.
Mat point_jacobian(const RobotModel& model, const KinematicsData& kin, int link,
                   const Vec3& local_point);

/// Time derivative of point_jacobian along the current state velocity,
/// so that point_acceleration == J * qdd + Jdot * qd.
Mat point_jacobian_dot(const RobotModel& model, const KinematicsData& kin, int link,
                       const Vec3& local_point);

/// 3 x nv angular Jacobian: link omega (world frame) == Jw * qd.
Mat angular_jacobian(const RobotModel& model, const KinematicsData& kin, int link);
Mat angular_jacobian_dot(const RobotModel& model, const KinematicsData& kin, int link);

/// Convenience wrappers addressed by end-effector index.
Mat point_jacobian(const RobotModel& model, const RobotState& state, int ee);
Mat jacobian_dot(const RobotModel& model, const RobotState& state, int ee);

}  // namespace iwbc
