#include "iwbc/kinematics.hpp"

#include <stdexcept>

namespace iwbc {

KinematicsData forward_kinematics(const RobotModel& model, const RobotState& state) {
  state.validate(model);
  KinematicsData kin;
  kin.links.resize(model.num_links());
  const int njd = model.floating_base() ? 7 : 0;  // offset of 1-DoF positions in q
  int one_dof = 0;
  for (int i = 0; i < model.num_links(); ++i) {
    const Joint& j = model.joints[i];
    LinkKin& lk = kin.links[i];
    if (j.type == JointType::floating) {
      lk.X = Isometry::Identity();
      lk.X.translate(state.base_position());
      lk.X.rotate(state.base_quaternion());
      lk.v_origin = state.qd.head<3>();
      lk.omega = lk.X.rotation() * state.qd.segment<3>(3);  // body -> world
      continue;
    }
    const double qi = state.q[njd + one_dof];
    const double qdi = state.qd[model.dof_index(i)];
    ++one_dof;

    Isometry parent = Isometry::Identity();
    Vec3 pv = Vec3::Zero(), pw = Vec3::Zero(), po = Vec3::Zero();
    if (j.parent_link >= 0) {
      const LinkKin& p = kin.links[j.parent_link];
      parent = p.X;
      pw = p.omega;
      pv = p.v_origin;
      po = p.X.translation();
    }
    Isometry motion = Isometry::Identity();
    if (j.type == JointType::revolute)
      motion.rotate(Eigen::AngleAxisd(qi, j.axis));
    else
      motion.translate(qi * j.axis);
    lk.X = parent * j.origin * motion;
    lk.axis_w = lk.X.rotation() * j.axis;
    // The child origin instantaneously coincides with a parent-extended
    // point; prismatic joints add the relative slide on top.
    lk.v_origin = pv + pw.cross(lk.X.translation() - po);
    if (j.type == JointType::revolute) {
      lk.omega = pw + qdi * lk.axis_w;
    } else {
      lk.omega = pw;
      lk.v_origin += qdi * lk.axis_w;
    }
    lk.axis_dot_w = lk.omega.cross(lk.axis_w);
  }
  return kin;
}

namespace {

// Applies fn(col, joint) for every joint on the chain from `link` to the
// root, plus the floating base if present.
template <typename Fn>
void for_each_supporting_joint(const RobotModel& model, int link, Fn&& fn) {
  for (int i = link; i >= 0; i = model.joints[i].parent_link) {
    if (model.joints[i].type == JointType::floating) {
      fn(-1, i);  // base marker
    } else {
      fn(model.dof_index(i), i);
    }
  }
}

}  // namespace

Mat point_jacobian(const RobotModel& model, const KinematicsData& kin, int link,
                   const Vec3& local_point) {
  Mat J = Mat::Zero(3, model.nv());
  const Vec3 p = kin.point_position(link, local_point);
  for_each_supporting_joint(model, link, [&](int col, int ji) {
    const LinkKin& lk = kin.links[ji];
    if (col < 0) {
      J.block<3, 3>(0, 0) = Mat3::Identity();
      const Mat3 R = lk.X.rotation();
      J.block<3, 3>(0, 3) = -skew(p - lk.X.translation()) * R;
      return;
    }
    if (model.joints[ji].type == JointType::revolute)
      J.col(col) = lk.axis_w.cross(p - lk.X.translation());
    else
      J.col(col) = lk.axis_w;
  });
  return J;
}

Mat point_jacobian_dot(const RobotModel& model, const KinematicsData& kin, int link,
                       const Vec3& local_point) {
  Mat Jd = Mat::Zero(3, model.nv());
  const Vec3 p = kin.point_position(link, local_point);
  const Vec3 pd = kin.point_velocity(link, local_point);
  for_each_supporting_joint(model, link, [&](int col, int ji) {
    const LinkKin& lk = kin.links[ji];
    if (col < 0) {
      const Mat3 R = lk.X.rotation();
      const Mat3 Rd = skew(lk.omega) * R;
      Jd.block<3, 3>(0, 3) =
          -skew(pd - lk.v_origin) * R - skew(p - lk.X.translation()) * Rd;
      return;
    }
    if (model.joints[ji].type == JointType::revolute)
      Jd.col(col) = lk.axis_dot_w.cross(p - lk.X.translation()) +
                    lk.axis_w.cross(pd - lk.v_origin);
    else
      Jd.col(col) = lk.axis_dot_w;
  });
  return Jd;
}

Mat angular_jacobian(const RobotModel& model, const KinematicsData& kin, int link) {
  Mat J = Mat::Zero(3, model.nv());
  for_each_supporting_joint(model, link, [&](int col, int ji) {
    const LinkKin& lk = kin.links[ji];
    if (col < 0) {
      J.block<3, 3>(0, 3) = lk.X.rotation();
      return;
    }
    if (model.joints[ji].type == JointType::revolute) J.col(col) = lk.axis_w;
  });
  return J;
}

Mat angular_jacobian_dot(const RobotModel& model, const KinematicsData& kin, int link) {
  Mat Jd = Mat::Zero(3, model.nv());
  for_each_supporting_joint(model, link, [&](int col, int ji) {
    const LinkKin& lk = kin.links[ji];
    if (col < 0) {
      Jd.block<3, 3>(0, 3) = skew(lk.omega) * lk.X.rotation();
      return;
    }
    if (model.joints[ji].type == JointType::revolute) Jd.col(col) = lk.axis_dot_w;
  });
  return Jd;
}

Mat point_jacobian(const RobotModel& model, const RobotState& state, int ee) {
  if (ee < 0 || ee >= model.num_end_effectors())
    throw std::invalid_argument("point_jacobian: invalid end-effector id");
  const auto kin = forward_kinematics(model, state);
  return point_jacobian(model, kin, model.end_effectors[ee].link, model.end_effectors[ee].offset);
}

Mat jacobian_dot(const RobotModel& model, const RobotState& state, int ee) {
  if (ee < 0 || ee >= model.num_end_effectors())
    throw std::invalid_argument("jacobian_dot: invalid end-effector id");
  const auto kin = forward_kinematics(model, state);
  return point_jacobian_dot(model, kin, model.end_effectors[ee].link,
                            model.end_effectors[ee].offset);
}

}  // namespace iwbc
