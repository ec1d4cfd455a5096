#include "iwbc/dynamics.hpp"

namespace iwbc {

DynamicsData compute_dynamics(const RobotModel& model, const RobotState& state) {
  DynamicsData d;
  d.kin = forward_kinematics(model, state);
  d.qd = state.qd;
  const int nv = model.nv();
  d.M = Mat::Zero(nv, nv);
  d.C = Mat::Zero(nv, nv);
  d.gravity_force = Vec::Zero(nv);
  d.J_com = Mat::Zero(3, nv);
  d.Jdot_com = Mat::Zero(3, nv);
  const Vec3 grav(0.0, 0.0, -model.gravity);

  for (int i = 0; i < model.num_links(); ++i) {
    const Link& link = model.links[i];
    const LinkKin& lk = d.kin.links[i];
    const Mat Jv = point_jacobian(model, d.kin, i, link.com);
    const Mat Jvd = point_jacobian_dot(model, d.kin, i, link.com);
    const Mat Jw = angular_jacobian(model, d.kin, i);
    const Mat Jwd = angular_jacobian_dot(model, d.kin, i);
    const Mat3 R = lk.X.rotation();
    const Mat3 Iw = R * link.inertia * R.transpose();

    d.M.noalias() += link.mass * Jv.transpose() * Jv;
    d.M.noalias() += Jw.transpose() * Iw * Jw;
    // This C satisfies Mdot = C + C^T exactly and C*qd equals the
    // Newton-Euler velocity-product force.
    d.C.noalias() += link.mass * Jv.transpose() * Jvd;
    d.C.noalias() += Jw.transpose() * Iw * Jwd;
    d.C.noalias() += Jw.transpose() * skew(lk.omega) * Iw * Jw;

    d.gravity_force.noalias() -= link.mass * Jv.transpose() * grav;

    d.total_mass += link.mass;
    const Vec3 cw = d.kin.point_position(i, link.com);
    d.com += link.mass * cw;
    d.com_vel += link.mass * d.kin.point_velocity(i, link.com);
    d.J_com.noalias() += link.mass * Jv;
    d.Jdot_com.noalias() += link.mass * Jvd;
  }
  d.Mdot = d.C + d.C.transpose();
  d.com /= d.total_mass;
  d.com_vel /= d.total_mass;
  d.J_com /= d.total_mass;
  d.Jdot_com /= d.total_mass;

  d.J.reserve(model.num_end_effectors());
  for (const auto& ee : model.end_effectors) {
    d.J.push_back(point_jacobian(model, d.kin, ee.link, ee.offset));
    d.Jdot.push_back(point_jacobian_dot(model, d.kin, ee.link, ee.offset));
    d.x.push_back(d.kin.point_position(ee.link, ee.offset));
    d.xd.push_back(d.kin.point_velocity(ee.link, ee.offset));
  }
  return d;
}

Mat mass_matrix(const RobotModel& model, const RobotState& state) {
  return compute_dynamics(model, state).M;
}

Mat mass_matrix_dot(const RobotModel& model, const RobotState& state) {
  return compute_dynamics(model, state).Mdot;
}

double total_energy(const RobotModel& model, const RobotState& state) {
  const auto d = compute_dynamics(model, state);
  double e = 0.5 * state.qd.dot(d.M * state.qd);
  for (int i = 0; i < model.num_links(); ++i)
    e += model.links[i].mass * model.gravity * d.kin.point_position(i, model.links[i].com).z();
  return e;
}

}  // namespace iwbc
