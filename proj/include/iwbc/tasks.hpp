#pragma once

#include <string>
#include <vector>

#include "iwbc/dynamics.hpp"

namespace iwbc {

/// One weighted least-squares term w * |E x - target|^2 of the QP cost.
struct QuadraticTerm {
  Mat E;
  Vec target;
  double weight = 1.0;

  void add_to(Mat& H, Vec& g) const {
    H.noalias() += 2.0 * weight * E.transpose() * E;
    g.noalias() -= 2.0 * weight * E.transpose() * target;
  }
  Vec error(const Vec& x) const { return E * x - target; }
};

enum class TaskKind { ee_velocity, posture, com, force_regulation };

/// Scenario-level task description; gains and targets are interpreted
/// per kind.
struct TaskSpec {
  TaskKind kind = TaskKind::posture;
  std::string end_effector;
  double weight = 1.0;
  double stiffness = 10.0;   ///< proportional gain (posture, com)
  double damping = 1.0;      ///< derivative / velocity-servo gain
  Vec3 target_velocity = Vec3::Zero();  ///< ee_velocity
  Vec target_posture;                   ///< posture (actuated joints)
  Vec3 target_com = Vec3::Zero();       ///< com
  double target_force = 15.0;           ///< force_regulation set-point, N
  double admittance_gain = 0.002;       ///< m/s per N of force error
  double velocity_saturation = 0.25;    ///< admittance output cap, m/s

  void validate() const;
};

/// Velocity servo on an end-effector point: error
/// J qdd + Jdot qd - kd (v_ref - xd) / dt, linear in qdd.
QuadraticTerm ee_velocity_task(const DynamicsData& dyn, int ee, const Vec3& v_ref, double kd,
                               double dt, int dim);

/// PD regulation of the actuated joints toward a reference posture.
QuadraticTerm posture_task(const RobotModel& model, const RobotState& state, const Vec& q_ref,
                           double kp, double kd, int dim);

/// PD regulation of the center of mass.
QuadraticTerm com_task(const DynamicsData& dyn, const Vec3& com_ref, double kp, double kd,
                       int dim);

/// Admittance law: velocity set-point that regulates the measured normal
/// force toward f_ref. Positive force error pushes along -n (into the
/// surface); the output is norm-saturated.
Vec3 force_regulation_velocity(const Vec3& n, double measured_normal_force, double f_ref,
                               double gain, double saturation);

/// Tiny quadratic pull of the contact-force variables toward zero; keeps
/// the force distribution determinate.
QuadraticTerm force_regularization(int dim, int qdd_dim, double weight);

}  // namespace iwbc
