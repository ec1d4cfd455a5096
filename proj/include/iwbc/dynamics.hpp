#pragma once

#include <vector>

#include "iwbc/kinematics.hpp"

namespace iwbc {

/// Everything the controller needs from one state: joint-space inertia,
/// its time derivative (C + C^T), gravity load, and per-end-effector
/// point Jacobian data.
struct DynamicsData {
  KinematicsData kin;
  Vec qd;    ///< the state velocity these quantities were built from
  Mat M;     ///< nv x nv, symmetric positive definite
  Mat C;     ///< Coriolis matrix; C*qd is the velocity-product force
  Mat Mdot;  ///< C + C^T
  Vec gravity_force;  ///< g(q): M qdd + C qd + g = tau + J^T f

  std::vector<Mat> J;     ///< 3 x nv per end-effector
  std::vector<Mat> Jdot;  ///< 3 x nv per end-effector
  std::vector<Vec3> x;    ///< end-effector world positions
  std::vector<Vec3> xd;   ///< end-effector world velocities

  Vec3 com = Vec3::Zero();
  Vec3 com_vel = Vec3::Zero();
  Mat J_com;     ///< 3 x nv center-of-mass Jacobian
  Mat Jdot_com;
  double total_mass = 0.0;
};

DynamicsData compute_dynamics(const RobotModel& model, const RobotState& state);

/// Joint-space mass matrix only.
Mat mass_matrix(const RobotModel& model, const RobotState& state);
/// Time derivative of the mass matrix, assembled as C + C^T.
Mat mass_matrix_dot(const RobotModel& model, const RobotState& state);

/// Kinetic plus potential energy, for drift bookkeeping.
double total_energy(const RobotModel& model, const RobotState& state);

}  // namespace iwbc
