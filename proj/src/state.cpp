#include "iwbc/state.hpp"

#include <cmath>
#include <stdexcept>

namespace iwbc {

RobotState RobotState::zero(const RobotModel& model) {
  RobotState s;
  s.q = Vec::Zero(model.nq());
  if (model.floating_base()) s.q[3] = 1.0;  // identity quaternion
  s.qd = Vec::Zero(model.nv());
  return s;
}

void RobotState::validate(const RobotModel& model) const {
  if (q.size() != model.nq() || qd.size() != model.nv())
    throw std::invalid_argument("state: dimension mismatch with model");
  if (model.floating_base()) {
    const double n = q.segment<4>(3).norm();
    if (std::abs(n - 1.0) > 1e-9)
      throw std::invalid_argument("state: base quaternion not unit norm");
  }
}

RobotState integrate_state(const RobotModel& model, const RobotState& state, const Vec& v,
                           double dt) {
  if (v.size() != model.nv()) throw std::invalid_argument("integrate_state: velocity dimension");
  RobotState next = state;
  next.time = state.time + dt;
  if (model.floating_base()) {
    next.q.head<3>() = state.q.head<3>() + dt * v.head<3>();
    const Vec3 w = v.segment<3>(3) * dt;  // body-frame rotation vector
    Quat dq;
    const double angle = w.norm();
    if (angle < 1e-12) {
      dq = Quat(1.0, 0.5 * w.x(), 0.5 * w.y(), 0.5 * w.z());
    } else {
      dq = Quat(Eigen::AngleAxisd(angle, w / angle));
    }
    Quat r = (state.base_quaternion() * dq).normalized();
    next.set_base_quaternion(r);
    next.q.tail(model.num_one_dof()) =
        state.q.tail(model.num_one_dof()) + dt * v.tail(model.num_one_dof());
  } else {
    next.q = state.q + dt * v;
  }
  return next;
}

}  // namespace iwbc
