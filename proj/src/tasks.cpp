#include "iwbc/tasks.hpp"

#include <cmath>
#include <stdexcept>

namespace iwbc {

void TaskSpec::validate() const {
  if (!(weight >= 0.0) || !std::isfinite(weight))
    throw std::invalid_argument("task: weight must be finite and nonnegative");
  if (!(stiffness > 0.0) || !(damping > 0.0))
    throw std::invalid_argument("task: gains must be positive");
  if (kind == TaskKind::force_regulation &&
      (!(admittance_gain > 0.0) || !(velocity_saturation > 0.0)))
    throw std::invalid_argument("task: admittance gains must be positive");
}

QuadraticTerm ee_velocity_task(const DynamicsData& dyn, int ee, const Vec3& v_ref, double kd,
                               double dt, int dim) {
  QuadraticTerm t;
  t.E = Mat::Zero(3, dim);
  t.E.leftCols(dyn.J[ee].cols()) = dyn.J[ee];
  t.target = kd * (v_ref - dyn.xd[ee]) / dt - dyn.Jdot[ee] * dyn.qd;
  return t;
}

QuadraticTerm posture_task(const RobotModel& model, const RobotState& state, const Vec& q_ref,
                           double kp, double kd, int dim) {
  const int nj = model.num_one_dof();
  if (q_ref.size() != nj) throw std::invalid_argument("posture_task: reference size");
  const int base = model.floating_base() ? 6 : 0;
  const int qoff = model.floating_base() ? 7 : 0;
  QuadraticTerm t;
  t.E = Mat::Zero(nj, dim);
  t.target = Vec::Zero(nj);
  for (int i = 0; i < nj; ++i) {
    t.E(i, base + i) = 1.0;
    t.target[i] = kp * (q_ref[i] - state.q[qoff + i]) - kd * state.qd[base + i];
  }
  return t;
}

QuadraticTerm com_task(const DynamicsData& dyn, const Vec3& com_ref, double kp, double kd,
                       int dim) {
  QuadraticTerm t;
  t.E = Mat::Zero(3, dim);
  t.E.leftCols(dyn.J_com.cols()) = dyn.J_com;
  t.target = kp * (com_ref - dyn.com) - kd * dyn.com_vel - dyn.Jdot_com * dyn.qd;
  return t;
}

Vec3 force_regulation_velocity(const Vec3& n, double measured_normal_force, double f_ref,
                               double gain, double saturation) {
  Vec3 v = -gain * (f_ref - measured_normal_force) * n;
  const double m = v.norm();
  if (m > saturation) v *= saturation / m;
  return v;
}

QuadraticTerm force_regularization(int dim, int qdd_dim, double weight) {
  QuadraticTerm t;
  t.weight = weight;
  const int nf = dim - qdd_dim;
  t.E = Mat::Zero(nf, dim);
  t.E.rightCols(nf) = Mat::Identity(nf, nf);
  t.target = Vec::Zero(nf);
  return t;
}

}  // namespace iwbc
