#pragma once

#include "iwbc/model.hpp"
#include "iwbc/state.hpp"

namespace iwbc {

/// Small reference robots used by the test suites and the shipped
/// scenarios. All units SI; inertias are simple solid-body values.

/// Point mass m at the tip of a massless rod of length l, one revolute
/// joint about +y at the world origin. Tip end-effector "tip".
RobotModel make_pendulum(double mass = 1.0, double length = 1.0);

/// Planar 2-link arm in the x-z plane, both joints about +y,
/// link lengths l1, l2, point masses at link tips. End-effector "tip".
RobotModel make_two_link_arm(double l1 = 0.5, double l2 = 0.5);

/// Fixed-base 7-DoF arm with alternating y/z axes, 0.25 m links.
/// End-effector "hand".
RobotModel make_arm7();

/// Single floating rigid body. End-effector "point" at a body offset.
RobotModel make_free_body(double mass = 1.0, const Vec3& com = Vec3::Zero());

/// Free particle: three prismatic joints (x, y, z) carrying one small
/// body. End-effector "point" at the body origin.
RobotModel make_particle(double mass = 1.0);

/// Floating-base biped: torso, two 3-DoF pitch legs with rectangular
/// feet, and a 2-DoF arm ending in a striking hand.
/// End-effectors: "l_foot", "r_foot", "hand".
RobotModel make_biped();

/// Nominal standing configuration for make_biped(): slightly bent knees,
/// feet flat on z = 0, arm raised toward +x.
RobotState biped_standing_state(const RobotModel& biped);

}  // namespace iwbc
