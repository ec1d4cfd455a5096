#pragma once

#include "iwbc/model.hpp"
#include "iwbc/types.hpp"

namespace iwbc {

/// Generalized position/velocity snapshot. Quaternion stored (w,x,y,z)
/// at q[3..6] for floating-base models.
struct RobotState {
  Vec q;
  Vec qd;
  double time = 0.0;

  static RobotState zero(const RobotModel& model);

  Vec3 base_position() const { return q.head<3>(); }
  Quat base_quaternion() const { return Quat(q[3], q[4], q[5], q[6]); }
  void set_base_quaternion(const Quat& r) {
    q[3] = r.w();
    q[4] = r.x();
    q[5] = r.y();
    q[6] = r.z();
  }

  /// Throws std::invalid_argument on dimension mismatch or a quaternion
  /// off the unit sphere by more than 1e-9.
  void validate(const RobotModel& model) const;
};

/// Integrates q forward by dt along velocity v (same layout as qd).
/// Base orientation moves on the quaternion manifold with the angular
/// component treated as a body-frame rotation vector rate.
RobotState integrate_state(const RobotModel& model, const RobotState& state, const Vec& v,
                           double dt);

}  // namespace iwbc
