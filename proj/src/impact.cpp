#include "iwbc/impact.hpp"

#include <cmath>

#include <Eigen/Cholesky>

namespace iwbc {

void ImpactSpec::validate() const {
  if (std::abs(normal.norm() - 1.0) > 1e-9)
    throw std::invalid_argument("impact: surface normal must be unit");
  if (restitution < 0.0 || restitution > 1.0)
    throw std::invalid_argument("impact: restitution must lie in [0, 1]");
  if (!(impact_duration > 0.0))
    throw std::invalid_argument("impact: impact duration must be positive");
}

Mat3 velocity_jump_projector(const Vec3& n, double restitution) {
  if (std::abs(n.norm() - 1.0) > 1e-9)
    throw std::invalid_argument("velocity_jump_projector: normal must be unit");
  return -(1.0 + restitution) * n * n.transpose();
}

Vec3 predict_ee_velocity_jump(const DynamicsData& dyn, const Vec& qdd, int ee,
                              const ImpactSpec& spec, double dt) {
  spec.validate();
  const Mat3 P = velocity_jump_projector(spec.normal, spec.restitution);
  return P * (dt * (dyn.J[ee] * qdd) + dyn.xd[ee] + dt * (dyn.Jdot[ee] * dyn.qd));
}

Mat operational_inertia_inverse(const Mat& M, const Mat& J_stacked) {
  Eigen::LLT<Mat> llt(M);
  if (llt.info() != Eigen::Success)
    throw std::invalid_argument("operational_inertia_inverse: M not positive definite");
  return J_stacked * llt.solve(J_stacked.transpose());
}

namespace {

Mat stack_predicted_jacobians(const DynamicsData& dyn, const std::vector<int>& ees, double dt) {
  const int nv = static_cast<int>(dyn.M.rows());
  Mat J(3 * ees.size(), nv);
  for (size_t i = 0; i < ees.size(); ++i)
    J.middleRows(3 * i, 3) = dyn.J[ees[i]] + dt * dyn.Jdot[ees[i]];
  return J;
}

Mat predicted_inertia_inverse(const DynamicsData& dyn, const Mat& J_pred, double dt) {
  const Mat M_pred = dyn.M + dt * dyn.Mdot;
  Eigen::LLT<Mat> llt(M_pred);
  if (llt.info() != Eigen::Success)
    throw PredictionError("predicted mass matrix not positive definite");
  return J_pred * llt.solve(J_pred.transpose());
}

// A = [[J, -Lambda^{-1}], [J_imp_1, 0], ..., [J_imp_k, 0]].
void assemble_problem_matrix(ImpactProblem& p) {
  const int nb = p.num_bodies();
  const int k = static_cast<int>(p.impact_ees.size());
  const int nu = p.nv + 3 * nb;
  Mat Js(3 * nb, p.nv);
  for (int i = 0; i < nb; ++i) Js.middleRows(3 * i, 3) = p.J_pred[i];
  p.A = Mat::Zero(3 * nb + 3 * k, nu);
  p.A.topLeftCorner(3 * nb, p.nv) = Js;
  p.A.block(0, p.nv, 3 * nb, 3 * nb) = -p.lambda_inv;
  for (int j = 0; j < k; ++j) {
    const int body = nb - k + j;  // impacting bodies sit at the end
    p.A.block(3 * nb + 3 * j, 0, 3, p.nv) = p.J_pred[body];
  }
}

}  // namespace

Mat predict_operational_inertia(const DynamicsData& dyn, const std::vector<int>& ees,
                                double dt) {
  if (!(dt >= 0.0)) throw std::invalid_argument("predict_operational_inertia: dt < 0");
  const Mat J_pred = stack_predicted_jacobians(dyn, ees, dt);
  return predicted_inertia_inverse(dyn, J_pred, dt);
}

ImpactProblem build_impact_problem(const DynamicsData& dyn, const std::vector<int>& contact_ees,
                                   int impact_ee, double dt) {
  ImpactProblem p;
  p.nv = static_cast<int>(dyn.M.rows());
  p.contact_ees = contact_ees;
  p.impact_ees = {impact_ee};
  std::vector<int> all = contact_ees;
  all.push_back(impact_ee);
  for (int ee : all) p.J_pred.push_back(dyn.J[ee] + dt * dyn.Jdot[ee]);
  const Mat Js = stack_predicted_jacobians(dyn, all, dt);
  p.lambda_inv = predicted_inertia_inverse(dyn, Js, dt);
  assemble_problem_matrix(p);
  return p;
}

void add_secondary_impact(ImpactProblem& problem, const DynamicsData& dyn, int ee_id2,
                          double dt) {
  for (int ee : problem.impact_ees)
    if (ee == ee_id2)
      throw std::invalid_argument("add_secondary_impact: end-effector already impacting");
  problem.impact_ees.push_back(ee_id2);
  problem.J_pred.push_back(dyn.J[ee_id2] + dt * dyn.Jdot[ee_id2]);
  std::vector<int> all = problem.contact_ees;
  for (int ee : problem.impact_ees) all.push_back(ee);
  const Mat Js = stack_predicted_jacobians(dyn, all, dt);
  problem.lambda_inv = predicted_inertia_inverse(dyn, Js, dt);
  assemble_problem_matrix(problem);
}

ImpulsePrediction predict_impulses(const ImpactProblem& problem, const Vec& delta_x,
                                   const ImpactSpec& spec) {
  spec.validate();
  const int nb = problem.num_bodies();
  const int k = static_cast<int>(problem.impact_ees.size());
  if (delta_x.size() != 3 * k)
    throw std::invalid_argument("predict_impulses: jump vector size mismatch");

  Vec b = Vec::Zero(problem.A.rows());
  b.tail(3 * k) = delta_x;
  const auto kkt = solve_equality_kkt(problem.A, b, /*allow_rank_deficient=*/true);
  if (kkt.status != QpStatus::optimal)
    throw SingularConfigurationError(
        "impulse prediction: propagation system is singular (no consistent solution)");

  ImpulsePrediction pred;
  pred.contact_ees = problem.contact_ees;
  pred.impact_ees = problem.impact_ees;
  pred.J_pred = problem.J_pred;
  pred.impact_duration = spec.impact_duration;
  pred.generalized = kkt.generalized;
  pred.delta_qd = kkt.u.head(problem.nv);
  for (int i = 0; i < nb; ++i) {
    pred.impulses.emplace_back(kkt.u.segment<3>(problem.nv + 3 * i));
    pred.impulsive_forces.emplace_back(pred.impulses.back() / spec.impact_duration);
  }
  pred.delta_tau = predict_impulsive_torque(problem.J_pred, pred.impulses,
                                            spec.impact_duration);

  // Sensitivity maps through the last impacting end-effector, the
  // "last three columns" of the KKT inverse.
  const Mat3 P = velocity_jump_projector(spec.normal, spec.restitution);
  const Mat PJ = P * problem.J_pred.back();  // 3 x nv
  pred.map_delta_qd = kkt.u_last_cols.topRows(problem.nv) * PJ;
  pred.map_delta_tau = Mat::Zero(problem.nv, problem.nv);
  for (int i = 0; i < nb; ++i) {
    const Mat Ki = kkt.u_last_cols.middleRows(problem.nv + 3 * i, 3);  // 3 x 3
    pred.map_force.push_back(Ki * PJ);
    pred.map_delta_tau.noalias() += problem.J_pred[i].transpose() * (Ki * PJ);
  }

  // Constraint residuals of the propagation and initial-condition rows.
  Mat Js(3 * nb, problem.nv);
  for (int i = 0; i < nb; ++i) Js.middleRows(3 * i, 3) = problem.J_pred[i];
  Vec I_stacked(3 * nb);
  for (int i = 0; i < nb; ++i) I_stacked.segment<3>(3 * i) = pred.impulses[i];
  pred.residual_propagation = (Js * pred.delta_qd - problem.lambda_inv * I_stacked).norm();
  double ri = 0.0;
  for (int j = 0; j < k; ++j)
    ri = std::max(ri, (problem.J_pred[nb - k + j] * pred.delta_qd - delta_x.segment<3>(3 * j))
                          .norm());
  pred.residual_initial = ri;
  return pred;
}

ImpulsePrediction predict_impact(const DynamicsData& dyn, const std::vector<int>& contact_ees,
                                 const ImpactSpec& spec, double dt, const Vec& qd,
                                 const Vec& qdd) {
  const auto problem = build_impact_problem(dyn, contact_ees, spec.ee_id, dt);
  const Mat3 P = velocity_jump_projector(spec.normal, spec.restitution);
  const Vec3 dx = P * (problem.J_pred.back() * (qd + dt * qdd));
  return predict_impulses(problem, dx, spec);
}

Vec predict_impulsive_torque(const std::vector<Mat>& jacobians, const std::vector<Vec3>& impulses,
                             double delta_t) {
  if (!(delta_t > 0.0)) throw std::invalid_argument("predict_impulsive_torque: delta_t <= 0");
  if (jacobians.size() != impulses.size())
    throw std::invalid_argument("predict_impulsive_torque: jacobian/impulse count mismatch");
  if (jacobians.empty()) return Vec();
  Vec tau = Vec::Zero(jacobians.front().cols());
  for (size_t i = 0; i < jacobians.size(); ++i)
    tau.noalias() += jacobians[i].transpose() * (impulses[i] / delta_t);
  return tau;
}

double neglected_term_ratio(const DynamicsData& dyn, const Vec& qdd, int ee, double dt) {
  const Vec3 neglected = dt * dt * (dyn.Jdot[ee] * qdd);
  const Vec3 kept = dt * (dyn.J[ee] * qdd) + dyn.xd[ee] + dt * (dyn.Jdot[ee] * dyn.qd);
  const double denom = kept.norm();
  return denom > 1e-12 ? neglected.norm() / denom : 0.0;
}

}  // namespace iwbc
