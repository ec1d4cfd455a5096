#pragma once

#include <stdexcept>
#include <vector>

#include "iwbc/dynamics.hpp"
#include "iwbc/qp.hpp"

namespace iwbc {

/// The robot is at (or predicted into) a configuration where the
/// impulse-propagation system loses rank inconsistently.
struct SingularConfigurationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// One-step-ahead extrapolation failed (predicted mass matrix not
/// positive definite for the given horizon).
struct PredictionError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// The anticipated impact: which end-effector, against which surface.
struct ImpactSpec {
  int ee_id = 0;
  Vec3 normal = Vec3::UnitZ();   ///< surface normal, unit
  double restitution = 0.02;     ///< c_r in [0, 1]
  double impact_duration = 0.005;  ///< delta-t of the impulsive phase, s

  void validate() const;
};

/// P_delta = -(1 + c_r) n n^T: maps pre-impact end-effector velocity to
/// its jump. Tangential components pass through unchanged in the
/// post-impact velocity.
Mat3 velocity_jump_projector(const Vec3& n, double restitution);

/// Predicted end-effector velocity jump one step ahead, affine in qdd:
/// P_delta (J dt qdd + J qd + Jdot qd dt), the second-order Jdot dt^2 qdd
/// term dropped.
Vec3 predict_ee_velocity_jump(const DynamicsData& dyn, const Vec& qdd, int ee,
                              const ImpactSpec& spec, double dt);

/// Lambda^{-1} = J M^{-1} J^T for a stacked end-effector Jacobian.
Mat operational_inertia_inverse(const Mat& M, const Mat& J_stacked);

/// First-order prediction (J + dt Jdot)(M + dt Mdot)^{-1}(J + dt Jdot)^T
/// over the listed end-effectors. Throws PredictionError when the
/// extrapolated mass matrix is not positive definite.
Mat predict_operational_inertia(const DynamicsData& dyn, const std::vector<int>& ees,
                                double dt);

/// The auxiliary least-norm problem over u = (delta_qd, I_1..I_{m+k}):
/// impulse propagation rows J delta_qd = Lambda^{-1} I plus one
/// jump-matching row block per impacting end-effector.
struct ImpactProblem {
  std::vector<int> contact_ees;  ///< established contacts, stack order
  std::vector<int> impact_ees;   ///< impacting end-effectors (appended last)
  std::vector<Mat> J_pred;       ///< predicted 3 x nv rows, stack order
  Mat lambda_inv;                ///< predicted operational inertia inverse
  Mat A;                         ///< constraint matrix of the least-norm QP
  int nv = 0;

  int num_bodies() const { return static_cast<int>(J_pred.size()); }
};

ImpactProblem build_impact_problem(const DynamicsData& dyn, const std::vector<int>& contact_ees,
                                   int impact_ee, double dt);

/// Appends a simultaneous impact at another end-effector: one more
/// impulse variable block and one more jump-matching row block.
void add_secondary_impact(ImpactProblem& problem, const DynamicsData& dyn, int ee_id2,
                          double dt);

/// Everything Eq.-style constraint builders need from one prediction:
/// concrete jump/impulse/torque values for a given incoming jump, plus
/// the maps applied to (qd + qdd dt) inside the controller rows.
struct ImpulsePrediction {
  Vec delta_qd;                       ///< predicted joint velocity jump
  std::vector<Vec3> impulses;         ///< I_i, N s, stack order
  std::vector<Vec3> impulsive_forces; ///< f_bar_i = I_i / delta_t
  Vec delta_tau;                      ///< predicted impulsive joint torque

  Mat map_delta_qd;            ///< nv x nv
  Mat map_delta_tau;           ///< nv x nv
  std::vector<Mat> map_force;  ///< 3 x nv per stacked body

  std::vector<int> contact_ees;
  std::vector<int> impact_ees;
  std::vector<Mat> J_pred;
  double impact_duration = 0.005;

  double residual_propagation = 0.0;  ///< |J dqd - Lambda^{-1} I|
  double residual_initial = 0.0;      ///< |J_imp dqd - dx|
  bool generalized = false;  ///< rank-deficient consistent fallback used
};

/// Solves the auxiliary problem for a given end-effector velocity jump
/// (stacked 3-vector per impacting end-effector, usually one). Throws
/// SingularConfigurationError when no consistent solution exists.
ImpulsePrediction predict_impulses(const ImpactProblem& problem, const Vec& delta_x,
                                   const ImpactSpec& spec);

/// Convenience pipeline: builds the problem, forms the jump through the
/// sensitivity route delta_x = P_delta J_pred (qd + dt qdd), and solves.
ImpulsePrediction predict_impact(const DynamicsData& dyn, const std::vector<int>& contact_ees,
                                 const ImpactSpec& spec, double dt, const Vec& qd,
                                 const Vec& qdd);

/// Delta-tau = sum_i J_i^T I_i / delta_t for externally supplied
/// impulses; delta_t must be positive.
Vec predict_impulsive_torque(const std::vector<Mat>& jacobians, const std::vector<Vec3>& impulses,
                             double delta_t);

/// Relative size of the neglected Jdot dt^2 qdd term of the jump
/// prediction; logged per step, reported when above 5%.
double neglected_term_ratio(const DynamicsData& dyn, const Vec& qdd, int ee, double dt);

}  // namespace iwbc
