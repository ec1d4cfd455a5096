#pragma once

// Test-only reference computations. Everything here is deliberately
// independent of the library's analytic paths: positions come from
// forward kinematics only, derivatives from finite differences, and
// optimization answers from first-principles iterative schemes.

#include <cmath>
#include <random>
#include <vector>

#include "iwbc/dynamics.hpp"
#include "iwbc/kinematics.hpp"
#include "iwbc/state.hpp"

namespace oracles {

using iwbc::Mat;
using iwbc::RobotModel;
using iwbc::RobotState;
using iwbc::Vec;
using iwbc::Vec2;
using iwbc::Vec3;

inline Vec3 ee_position(const RobotModel& m, const RobotState& s, int ee) {
  const auto kin = iwbc::forward_kinematics(m, s);
  return kin.point_position(m.end_effectors[ee].link, m.end_effectors[ee].offset);
}

// d(ee position)/dq via central differences on the velocity manifold.
inline Mat fd_point_jacobian(const RobotModel& m, const RobotState& s, int ee,
                             double h = 1e-6) {
  Mat J(3, m.nv());
  for (int k = 0; k < m.nv(); ++k) {
    Vec dir = Vec::Zero(m.nv());
    dir[k] = 1.0;
    const RobotState plus = iwbc::integrate_state(m, s, dir, h);
    const RobotState minus = iwbc::integrate_state(m, s, dir, -h);
    J.col(k) = (ee_position(m, plus, ee) - ee_position(m, minus, ee)) / (2.0 * h);
  }
  return J;
}

// dJ/dt via central differences along the state's own velocity.
inline Mat fd_jacobian_dot(const RobotModel& m, const RobotState& s, int ee, double h = 1e-6) {
  const RobotState plus = iwbc::integrate_state(m, s, s.qd, h);
  const RobotState minus = iwbc::integrate_state(m, s, s.qd, -h);
  return (iwbc::point_jacobian(m, plus, ee) - iwbc::point_jacobian(m, minus, ee)) / (2.0 * h);
}

// Kinetic energy from finite-differenced link motions: no Jacobian or
// mass-matrix code involved. Link angular velocity is recovered from the
// rotation increment, com velocity from position differences.
inline double fd_kinetic_energy(const RobotModel& m, const RobotState& s, double h = 1e-6) {
  const RobotState plus = iwbc::integrate_state(m, s, s.qd, h);
  const RobotState minus = iwbc::integrate_state(m, s, s.qd, -h);
  const auto kp = iwbc::forward_kinematics(m, plus);
  const auto km = iwbc::forward_kinematics(m, minus);
  double t = 0.0;
  for (int i = 0; i < m.num_links(); ++i) {
    const Vec3 v =
        (kp.point_position(i, m.links[i].com) - km.point_position(i, m.links[i].com)) /
        (2.0 * h);
    const iwbc::Mat3 Rp = kp.links[i].X.rotation();
    const iwbc::Mat3 Rm = km.links[i].X.rotation();
    const Eigen::AngleAxisd aa(Rp * Rm.transpose());
    const Vec3 w = aa.angle() / (2.0 * h) * aa.axis();
    const auto kin = iwbc::forward_kinematics(m, s);
    const iwbc::Mat3 R = kin.links[i].X.rotation();
    t += 0.5 * m.links[i].mass * v.squaredNorm() +
         0.5 * w.dot(R * m.links[i].inertia * R.transpose() * w);
  }
  return t;
}

// Mass matrix as the Hessian of kinetic energy in qd. T is exactly
// quadratic in qd, so a large step keeps the second difference exact
// while drowning out the inner finite-difference noise.
inline Mat energy_hessian_mass_matrix(const RobotModel& m, const RobotState& s,
                                      double h = 0.5) {
  const int n = m.nv();
  Mat M(n, n);
  auto T = [&](const Vec& qd) {
    RobotState c = s;
    c.qd = qd;
    return fd_kinetic_energy(m, c);
  };
  for (int i = 0; i < n; ++i) {
    for (int j = i; j < n; ++j) {
      Vec ei = Vec::Zero(n), ej = Vec::Zero(n);
      ei[i] = h;
      ej[j] = h;
      const double tpp = T(s.qd + ei + ej), tpm = T(s.qd + ei - ej);
      const double tmp = T(s.qd - ei + ej), tmm = T(s.qd - ei - ej);
      M(i, j) = M(j, i) = (tpp - tpm - tmp + tmm) / (4.0 * h * h);
    }
  }
  return M;
}

inline RobotState random_state(const RobotModel& m, std::mt19937_64& rng, double q_amp = 1.0,
                               double qd_amp = 1.0) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  RobotState s = RobotState::zero(m);
  Vec dq(m.nv());
  for (int i = 0; i < m.nv(); ++i) dq[i] = q_amp * u(rng);
  s = iwbc::integrate_state(m, s, dq, 1.0);
  for (int i = 0; i < m.nv(); ++i) s.qd[i] = qd_amp * u(rng);
  return s;
}

// Brute-force convex hull: an ordered edge (i, j) is on the hull iff all
// other points lie strictly to its left. O(n^3).
inline std::vector<Vec2> brute_force_hull(const std::vector<Vec2>& pts) {
  const int n = static_cast<int>(pts.size());
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      bool all_left = true;
      for (int k = 0; k < n && all_left; ++k) {
        if (k == i || k == j) continue;
        const Vec2 a = pts[j] - pts[i], b = pts[k] - pts[i];
        if (a.x() * b.y() - a.y() * b.x() < 1e-12) all_left = false;
      }
      if (all_left) edges.emplace_back(i, j);
    }
  }
  std::vector<Vec2> hull;
  if (edges.empty()) return hull;
  int start = edges.front().first, cur = start;
  do {
    hull.push_back(pts[cur]);
    int next = -1;
    for (auto& [a, b] : edges)
      if (a == cur) next = b;
    if (next < 0) break;
    cur = next;
  } while (cur != start && hull.size() <= pts.size());
  return hull;
}

// Winding-free point-in-convex-polygon test on a CCW vertex list.
// Returns the signed margin: positive inside, negative outside.
inline double polygon_margin(const std::vector<Vec2>& ccw, const Vec2& p) {
  double margin = std::numeric_limits<double>::infinity();
  const int n = static_cast<int>(ccw.size());
  for (int i = 0; i < n; ++i) {
    const Vec2 a = ccw[i], b = ccw[(i + 1) % n];
    const Vec2 e = b - a;
    const double cross = e.x() * (p.y() - a.y()) - e.y() * (p.x() - a.x());
    margin = std::min(margin, cross / e.norm());
  }
  return margin;
}

// Exact second-order friction-cone membership.
inline bool in_friction_cone(const Vec3& f, const Vec3& n, double mu) {
  const double fn = f.dot(n);
  if (fn < 0.0) return false;
  return (f - fn * n).norm() <= mu * fn + 1e-12;
}

// Least-norm solution of A u = b by conjugate gradients on the normal
// equations (CGNR). Matrix-vector products only; converges to the
// pseudoinverse solution for consistent systems.
inline Vec cgnr_least_norm(const Mat& A, const Vec& b, double tol = 1e-13,
                           int max_iter = 200000) {
  Vec y = Vec::Zero(A.rows());
  Vec r = b;  // residual of (A A^T) y = b at y = 0
  Vec p = r;
  double rr = r.squaredNorm();
  const double stop = tol * (1.0 + b.norm());
  for (int it = 0; it < max_iter && std::sqrt(rr) > stop; ++it) {
    const Vec Ap = A * (A.transpose() * p);
    const double pAp = p.dot(Ap);
    if (pAp <= 0.0) break;  // hit the numerical nullspace
    const double alpha = rr / pAp;
    y += alpha * p;
    r -= alpha * Ap;
    const double rr_new = r.squaredNorm();
    p = r + (rr_new / rr) * p;
    rr = rr_new;
  }
  return A.transpose() * y;
}

// Augmented-Lagrangian least-norm solve of A u = b: multiplier updates on
// a penalized unconstrained minimization, algebraically unrelated to the
// KKT factorization it checks. Converges to the least-norm solution for
// consistent systems, including rank-deficient ones.
inline Vec alm_least_norm(const Mat& A, const Vec& b, int iters = 150) {
  const double rho = 1e7 / (1.0 + A.squaredNorm());
  const Mat N = Mat::Identity(A.cols(), A.cols()) + rho * A.transpose() * A;
  const Eigen::LDLT<Mat> ldlt(N);
  Vec lambda = Vec::Zero(A.rows());
  Vec u = Vec::Zero(A.cols());
  for (int k = 0; k < iters; ++k) {
    const Vec rhs = A.transpose() * (rho * b - lambda);
    u = ldlt.solve(rhs);
    u += ldlt.solve(rhs - N * u);  // one refinement step against the penalty conditioning
    lambda += rho * (A * u - b);
  }
  return u;
}

// Projected dual-ascent (Uzawa) reference solver for strictly convex
// QPs: gradient steps on the multipliers, inequality duals projected to
// the nonnegative orthant. Slow but algorithmically unrelated to an
// active-set method.
inline Vec uzawa_qp(const Mat& H, const Vec& g, const Mat& Ae, const Vec& be, const Mat& G,
                    const Vec& h, double tol = 1e-9, int max_iter = 2000000) {
  const Eigen::LLT<Mat> llt(H);
  const int me = static_cast<int>(Ae.rows()), mi = static_cast<int>(G.rows());
  Mat S(me + mi, H.rows());
  if (me > 0) S.topRows(me) = Ae;
  if (mi > 0) S.bottomRows(mi) = G;
  double lip = 1.0;
  if (S.rows() > 0) {
    const Mat D = S * llt.solve(S.transpose());
    lip = std::max(1e-12, Eigen::SelfAdjointEigenSolver<Mat>(D).eigenvalues().maxCoeff());
  }
  const double t = 1.0 / lip;
  Vec nu = Vec::Zero(me), lam = Vec::Zero(mi);
  Vec x = -llt.solve(g);
  for (int it = 0; it < max_iter; ++it) {
    x = -llt.solve(g + (me > 0 ? Vec(Ae.transpose() * nu) : Vec::Zero(H.rows())) +
                   (mi > 0 ? Vec(G.transpose() * lam) : Vec::Zero(H.rows())));
    double res = 0.0;
    if (me > 0) {
      const Vec re = Ae * x - be;
      nu += t * re;
      res = std::max(res, re.lpNorm<Eigen::Infinity>());
    }
    if (mi > 0) {
      const Vec ri = G * x - h;
      lam = (lam + t * ri).cwiseMax(0.0);
      for (int i = 0; i < mi; ++i) {
        res = std::max(res, std::max(ri[i], 0.0));          // primal violation
        res = std::max(res, std::abs(lam[i] * ri[i]));      // complementarity
      }
    }
    if (res < tol) break;
  }
  return x;
}

}  // namespace oracles
