#pragma once

#include <string>
#include <vector>

#include "iwbc/contact.hpp"
#include "iwbc/impact.hpp"

namespace iwbc {

/// Provenance tag naming the constraint family a block encodes.
enum class ConstraintLabel { Eq1, Eq3, Eq5, Eq17, Eq18, Eq19, Eq20, Eq21, plumbing };

const char* to_string(ConstraintLabel label);

/// One block of stacked linear rows over the full decision vector
/// (accelerations first, stacked contact-force variables after).
struct LinearConstraintBlock {
  enum class Kind { equality, inequality };
  Mat G;
  Vec h;
  Kind kind = Kind::inequality;
  ConstraintLabel label = ConstraintLabel::plumbing;
  std::string note;

  int rows() const { return static_cast<int>(G.rows()); }
  /// h - G x (equality blocks: signed residual b - G x).
  Vec margins(const Vec& x) const { return h - G * x; }
};

/// Zero relative motion at a contact point with velocity drift
/// compensation: J qdd = -Jdot qd - v / dt.
LinearConstraintBlock contact_geometric_rows(const Mat& J, const Mat& Jdot, const Vec& qd,
                                             const Vec3& point_velocity, double dt, int dim);

/// Post-impact joint velocity window (rows with infinite bounds are
/// skipped): map qdd dt <= qd_max - qd - map qd, and mirrored.
LinearConstraintBlock post_impact_joint_velocity_rows(const ImpulsePrediction& pred,
                                                      const Vec& qd, const Vec& qd_min,
                                                      const Vec& qd_max, double dt, int dim);

/// Impulsive joint torque window:
/// (dt/delta_t) map qdd <= dtau_max - (1/delta_t) map qd, and mirrored.
LinearConstraintBlock impulsive_torque_rows(const ImpulsePrediction& pred, const Vec& qd,
                                            const Vec& dtau_min, const Vec& dtau_max, double dt,
                                            double delta_t, int dim);

/// Post-impact CoP containment of one established contact. A_c comes
/// from cop_constraint_matrix; the measured wrench and the impulse map
/// are rotated into the contact frame by R_wc.
LinearConstraintBlock post_impact_cop_rows(const Mat& A_c, const Mat3& R_wc,
                                           const Mat& force_map, const Wrench& measured_contact,
                                           const Vec& qd, double dt, double delta_t, int dim);

/// Post-impact friction feasibility of one established contact,
/// componentwise through P_mu (world frame).
LinearConstraintBlock post_impact_friction_rows(const Mat3& P_mu, const Mat& force_map,
                                                const Vec3& measured_force, const Vec& qd,
                                                double dt, double delta_t, int dim);

/// Point force at world position p expressed as an inertial wrench:
/// rows (p x f; f), torque before force.
Mat wrench_transform(const Vec3& position);

/// Post-impact ZMP containment. `wrench_maps` carries one A_i * map_f,i
/// product (6 x nv) per end-effector included in the configured set;
/// `total_wrench` is the summed measured inertial wrench.
LinearConstraintBlock post_impact_zmp_rows(const Mat& A_Z, const std::vector<Mat>& wrench_maps,
                                           const Wrench& total_wrench, const Vec& qd, double dt,
                                           double delta_t, int dim);

/// Baseline rows over contact-force variables: rows_on_wrench * W x <= 0
/// with W the linear map from the decision vector to a 6-wrench.
LinearConstraintBlock wrench_inequality_rows(const Mat& rows_on_wrench, const Mat& wrench_map,
                                             ConstraintLabel label, int dim);

struct StackedConstraints {
  Mat A_eq;
  Vec b_eq;
  Mat G;
  Vec h;
  /// block index per stacked row, inequality side
  std::vector<int> ineq_row_block;
  std::vector<int> eq_row_block;
};

/// Deterministic stacking: label order first, insertion order second.
/// Optional row normalization scales each inequality row (and its bound)
/// to unit infinity norm.
StackedConstraints assemble(const std::vector<LinearConstraintBlock>& blocks, int dim,
                            bool row_normalize = false);

/// Human-readable dump of every block (label, G, h) for step debugging.
std::string dump(const std::vector<LinearConstraintBlock>& blocks);

}  // namespace iwbc
