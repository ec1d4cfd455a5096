#include "iwbc/constraints.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace iwbc {

namespace {

bool bounded(double lo, double hi) { return std::isfinite(lo) && std::isfinite(hi); }

}  // namespace

const char* to_string(ConstraintLabel label) {
  switch (label) {
    case ConstraintLabel::Eq1: return "Eq1";
    case ConstraintLabel::Eq3: return "Eq3";
    case ConstraintLabel::Eq5: return "Eq5";
    case ConstraintLabel::Eq17: return "Eq17";
    case ConstraintLabel::Eq18: return "Eq18";
    case ConstraintLabel::Eq19: return "Eq19";
    case ConstraintLabel::Eq20: return "Eq20";
    case ConstraintLabel::Eq21: return "Eq21";
    case ConstraintLabel::plumbing: return "plumbing";
  }
  return "?";
}

LinearConstraintBlock contact_geometric_rows(const Mat& J, const Mat& Jdot, const Vec& qd,
                                             const Vec3& point_velocity, double dt, int dim) {
  LinearConstraintBlock b;
  b.kind = LinearConstraintBlock::Kind::equality;
  b.label = ConstraintLabel::Eq1;
  b.G = Mat::Zero(3, dim);
  b.G.leftCols(J.cols()) = J;
  b.h = -(Jdot * qd) - point_velocity / dt;
  return b;
}

LinearConstraintBlock post_impact_joint_velocity_rows(const ImpulsePrediction& pred,
                                                      const Vec& qd, const Vec& qd_min,
                                                      const Vec& qd_max, double dt, int dim) {
  const int nv = static_cast<int>(qd.size());
  for (int i = 0; i < nv; ++i)
    if (bounded(qd_min[i], qd_max[i]) && !(qd_min[i] < qd_max[i]))
      throw std::invalid_argument("post_impact_joint_velocity_rows: inverted bounds");
  std::vector<int> rows;
  for (int i = 0; i < nv; ++i)
    if (bounded(qd_min[i], qd_max[i])) rows.push_back(i);

  LinearConstraintBlock b;
  b.label = ConstraintLabel::Eq17;
  const int r = static_cast<int>(rows.size());
  b.G = Mat::Zero(2 * r, dim);
  b.h = Vec::Zero(2 * r);
  const Vec bias = pred.map_delta_qd * qd;
  for (int k = 0; k < r; ++k) {
    const int i = rows[k];
    b.G.block(k, 0, 1, nv) = dt * pred.map_delta_qd.row(i);
    b.h[k] = qd_max[i] - qd[i] - bias[i];
    b.G.block(r + k, 0, 1, nv) = -dt * pred.map_delta_qd.row(i);
    b.h[r + k] = -(qd_min[i] - qd[i] - bias[i]);
  }
  return b;
}

LinearConstraintBlock impulsive_torque_rows(const ImpulsePrediction& pred, const Vec& qd,
                                            const Vec& dtau_min, const Vec& dtau_max, double dt,
                                            double delta_t, int dim) {
  if (!(delta_t > 0.0)) throw std::invalid_argument("impulsive_torque_rows: delta_t <= 0");
  const int nv = static_cast<int>(qd.size());
  std::vector<int> rows;
  for (int i = 0; i < nv; ++i)
    if (bounded(dtau_min[i], dtau_max[i])) rows.push_back(i);

  LinearConstraintBlock b;
  b.label = ConstraintLabel::Eq18;
  const int r = static_cast<int>(rows.size());
  b.G = Mat::Zero(2 * r, dim);
  b.h = Vec::Zero(2 * r);
  const Vec bias = pred.map_delta_tau * qd / delta_t;
  for (int k = 0; k < r; ++k) {
    const int i = rows[k];
    b.G.block(k, 0, 1, nv) = (dt / delta_t) * pred.map_delta_tau.row(i);
    b.h[k] = dtau_max[i] - bias[i];
    b.G.block(r + k, 0, 1, nv) = -(dt / delta_t) * pred.map_delta_tau.row(i);
    b.h[r + k] = -(dtau_min[i] - bias[i]);
  }
  return b;
}

LinearConstraintBlock post_impact_cop_rows(const Mat& A_c, const Mat3& R_wc,
                                           const Mat& force_map, const Wrench& measured_contact,
                                           const Vec& qd, double dt, double delta_t, int dim) {
  if (!(measured_contact.force.z() > 0.0))
    throw ContactError("post_impact_cop_rows: contact inactive (f_n <= 0)");
  const Mat A_c2 = A_c.rightCols(3);
  const Mat map_c = R_wc.transpose() * force_map;  // impulse map in the contact frame
  LinearConstraintBlock b;
  b.label = ConstraintLabel::Eq19;
  b.G = Mat::Zero(A_c.rows(), dim);
  b.G.leftCols(force_map.cols()) = (dt / delta_t) * (A_c2 * map_c);
  b.h = -(A_c * measured_contact.stacked()) - (A_c2 * (map_c * qd)) / delta_t;
  return b;
}

LinearConstraintBlock post_impact_friction_rows(const Mat3& P_mu, const Mat& force_map,
                                                const Vec3& measured_force, const Vec& qd,
                                                double dt, double delta_t, int dim) {
  LinearConstraintBlock b;
  b.label = ConstraintLabel::Eq20;
  b.G = Mat::Zero(3, dim);
  b.G.leftCols(force_map.cols()) = (dt / delta_t) * (P_mu * force_map);
  b.h = -(P_mu * (measured_force + force_map * qd / delta_t));
  return b;
}

Mat wrench_transform(const Vec3& position) {
  Mat A(6, 3);
  A.topRows(3) = skew(position);
  A.bottomRows(3) = Mat3::Identity();
  return A;
}

LinearConstraintBlock post_impact_zmp_rows(const Mat& A_Z, const std::vector<Mat>& wrench_maps,
                                           const Wrench& total_wrench, const Vec& qd, double dt,
                                           double delta_t, int dim) {
  LinearConstraintBlock b;
  b.label = ConstraintLabel::Eq21;
  const int nv = static_cast<int>(qd.size());
  Mat sum = Mat::Zero(6, nv);
  for (const auto& m : wrench_maps) sum += m;
  b.G = Mat::Zero(A_Z.rows(), dim);
  b.G.leftCols(nv) = (dt / delta_t) * (A_Z * sum);
  b.h = -(A_Z * total_wrench.stacked()) - (A_Z * (sum * qd)) / delta_t;
  return b;
}

LinearConstraintBlock wrench_inequality_rows(const Mat& rows_on_wrench, const Mat& wrench_map,
                                             ConstraintLabel label, int dim) {
  if (wrench_map.cols() != dim)
    throw std::invalid_argument("wrench_inequality_rows: map must span the decision vector");
  LinearConstraintBlock b;
  b.label = label;
  b.G = rows_on_wrench * wrench_map;
  b.h = Vec::Zero(rows_on_wrench.rows());
  return b;
}

StackedConstraints assemble(const std::vector<LinearConstraintBlock>& blocks, int dim,
                            bool row_normalize) {
  for (const auto& b : blocks) {
    if (b.G.cols() != dim) throw std::invalid_argument("assemble: block dimension mismatch");
    if (b.G.rows() != b.h.size()) throw std::invalid_argument("assemble: G/h row mismatch");
    if (!b.G.allFinite() || !b.h.allFinite())
      throw std::invalid_argument("assemble: non-finite constraint entries");
  }
  // label order first, insertion order second
  std::vector<int> order(blocks.size());
  for (size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    return static_cast<int>(blocks[a].label) < static_cast<int>(blocks[b].label);
  });

  int ne = 0, ni = 0;
  for (const auto& b : blocks)
    (b.kind == LinearConstraintBlock::Kind::equality ? ne : ni) += b.rows();
  StackedConstraints s;
  s.A_eq = Mat::Zero(ne, dim);
  s.b_eq = Vec::Zero(ne);
  s.G = Mat::Zero(ni, dim);
  s.h = Vec::Zero(ni);
  int re = 0, ri = 0;
  for (int idx : order) {
    const auto& b = blocks[idx];
    for (int r = 0; r < b.rows(); ++r) {
      double scale = 1.0;
      if (row_normalize && b.kind == LinearConstraintBlock::Kind::inequality) {
        const double m = b.G.row(r).lpNorm<Eigen::Infinity>();
        if (m > 1e-12) scale = 1.0 / m;
      }
      if (b.kind == LinearConstraintBlock::Kind::equality) {
        s.A_eq.row(re) = b.G.row(r);
        s.b_eq[re] = b.h[r];
        s.eq_row_block.push_back(idx);
        ++re;
      } else {
        s.G.row(ri) = scale * b.G.row(r);
        s.h[ri] = scale * b.h[r];
        s.ineq_row_block.push_back(idx);
        ++ri;
      }
    }
  }
  return s;
}

std::string dump(const std::vector<LinearConstraintBlock>& blocks) {
  std::ostringstream os;
  os.precision(17);
  for (const auto& b : blocks) {
    os << to_string(b.label) << " "
       << (b.kind == LinearConstraintBlock::Kind::equality ? "eq" : "ineq") << " rows="
       << b.rows();
    if (!b.note.empty()) os << " (" << b.note << ")";
    os << "\nG\n" << b.G << "\nh\n" << b.h.transpose() << "\n";
  }
  return os.str();
}

}  // namespace iwbc
