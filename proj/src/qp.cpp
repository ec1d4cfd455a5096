#include "iwbc/qp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include <Eigen/Eigenvalues>

namespace iwbc {

namespace {

constexpr double kFeasTol = 1e-8;
constexpr double kDualTol = 1e-8;
constexpr double kStepTol = 1e-11;

struct AsOutcome {
  Vec x;
  std::vector<int> working;
  Vec eq_duals;
  Vec ineq_duals;  // full-size, zero off the working set
  int iterations = 0;
  bool optimal = false;
  bool singular = false;
};

// Primal active-set loop from a feasible iterate. Equality rows are
// assumed independent; working-set rows are kept independent when added.
AsOutcome active_set_minimize(const Mat& H, const Vec& g, const Mat& Ae, const Vec& be,
                              const Mat& G, const Vec& h, Vec x, std::vector<int> working,
                              int max_iter) {
  (void)be;
  const int d = static_cast<int>(x.size());
  const int me = static_cast<int>(Ae.rows());
  const int mi = static_cast<int>(G.rows());
  AsOutcome out;
  out.ineq_duals = Vec::Zero(mi);
  out.eq_duals = Vec::Zero(me);

  auto is_independent = [&](const Mat& C, const Vec& row) {
    if (C.rows() == 0) return row.norm() > 0.0;
    const Vec y = C.transpose().colPivHouseholderQr().solve(row);
    return (C.transpose() * y - row).norm() > 1e-10 * (1.0 + row.norm());
  };

  for (int it = 0; it < max_iter; ++it) {
    out.iterations = it + 1;
    const int mw = static_cast<int>(working.size());
    Mat C(me + mw, d);
    if (me > 0) C.topRows(me) = Ae;
    for (int i = 0; i < mw; ++i) C.row(me + i) = G.row(working[i]);

    const int kd = d + me + mw;
    Mat K = Mat::Zero(kd, kd);
    K.topLeftCorner(d, d) = H;
    if (me + mw > 0) {
      K.topRightCorner(d, me + mw) = C.transpose();
      K.bottomLeftCorner(me + mw, d) = C;
    }
    Vec rhs = Vec::Zero(kd);
    rhs.head(d) = -(H * x + g);
    Eigen::PartialPivLU<Mat> lu(K);
    const Vec sol = lu.solve(rhs);
    if (!sol.allFinite() ||
        (K * sol - rhs).lpNorm<Eigen::Infinity>() >
            1e-8 * (1.0 + rhs.lpNorm<Eigen::Infinity>())) {
      out.singular = true;
      out.x = x;
      out.working = working;
      return out;
    }
    const Vec p = sol.head(d);
    const Vec mult = sol.tail(me + mw);

    if (p.lpNorm<Eigen::Infinity>() <= kStepTol * (1.0 + x.lpNorm<Eigen::Infinity>())) {
      // Stationary on the working set: check inequality multipliers.
      int drop = -1;
      double most_negative = -kDualTol;
      for (int i = 0; i < mw; ++i) {
        const double lam = mult[me + i];
        if (lam < most_negative) {
          most_negative = lam;
          drop = i;
        }
      }
      if (drop < 0) {
        out.x = x;
        out.working = working;
        out.eq_duals = mult.head(me);
        for (int i = 0; i < mw; ++i) out.ineq_duals[working[i]] = mult[me + i];
        out.optimal = true;
        return out;
      }
      working.erase(working.begin() + drop);
      continue;
    }

    // Step length to the nearest blocking constraint.
    double alpha = 1.0;
    int blocking = -1;
    for (int i = 0; i < mi; ++i) {
      if (std::find(working.begin(), working.end(), i) != working.end()) continue;
      const double gp = G.row(i).dot(p);
      if (gp <= 1e-14 * (1.0 + p.norm())) continue;
      const double slack = h[i] - G.row(i).dot(x);
      const double ai = std::max(slack, 0.0) / gp;
      if (ai < alpha - 1e-14) {
        alpha = ai;
        blocking = i;
      }
    }
    x += alpha * p;
    if (blocking >= 0) {
      Mat C_rows(me + static_cast<int>(working.size()), d);
      if (me > 0) C_rows.topRows(me) = Ae;
      for (size_t i = 0; i < working.size(); ++i)
        C_rows.row(me + static_cast<int>(i)) = G.row(working[i]);
      if (is_independent(C_rows, G.row(blocking).transpose())) {
        working.push_back(blocking);
        std::sort(working.begin(), working.end());
      } else if (alpha <= 1e-14) {
        // Degenerate vertex: relax the most negative multiplier if any.
        int drop = -1;
        double most_negative = 0.0;
        for (size_t i = 0; i < working.size(); ++i) {
          const double lam = mult.size() > static_cast<long>(me + i) ? mult[me + i] : 0.0;
          if (lam < most_negative) {
            most_negative = lam;
            drop = static_cast<int>(i);
          }
        }
        if (drop < 0) break;
        working.erase(working.begin() + drop);
      }
    }
  }
  out.x = x;
  out.working = working;
  return out;
}

// Independent equality row selection plus a consistency check for the
// dropped rows. Returns false (with certificate) on contradiction.
bool preprocess_equalities(const Mat& A, const Vec& b, Mat& A_ind, Vec& b_ind,
                           std::vector<int>& inconsistent) {
  if (A.rows() == 0) {
    A_ind = A;
    b_ind = b;
    return true;
  }
  Eigen::ColPivHouseholderQR<Mat> qr(A.transpose());
  qr.setThreshold(1e-10);
  const int r = static_cast<int>(qr.rank());
  const auto perm = qr.colsPermutation().indices();
  std::vector<int> keep(perm.data(), perm.data() + r);
  std::sort(keep.begin(), keep.end());
  A_ind.resize(r, A.cols());
  b_ind.resize(r);
  for (int i = 0; i < r; ++i) {
    A_ind.row(i) = A.row(keep[i]);
    b_ind[i] = b[keep[i]];
  }
  // Minimum-norm solution of the independent system; any dropped row it
  // fails to satisfy is contradictory.
  const Vec x_p = A_ind.completeOrthogonalDecomposition().solve(b_ind);
  for (int i = 0; i < A.rows(); ++i) {
    const double res = std::abs(A.row(i).dot(x_p) - b[i]);
    if (res > 1e-8 * (1.0 + std::abs(b[i]))) inconsistent.push_back(i);
  }
  return inconsistent.empty();
}

}  // namespace

const char* to_string(QpStatus s) {
  switch (s) {
    case QpStatus::optimal: return "optimal";
    case QpStatus::infeasible: return "infeasible";
    case QpStatus::max_iter: return "max_iter";
    case QpStatus::singular: return "singular";
  }
  return "unknown";
}

void QpProblem::validate() const {
  const int d = dim();
  if (H.cols() != d || g.size() != d) throw std::invalid_argument("qp: H/g dimension mismatch");
  if (A_eq.rows() > 0 && A_eq.cols() != d) throw std::invalid_argument("qp: A_eq columns");
  if (A_eq.rows() != b_eq.size()) throw std::invalid_argument("qp: b_eq size");
  if (G.rows() > 0 && G.cols() != d) throw std::invalid_argument("qp: G columns");
  if (G.rows() != h.size()) throw std::invalid_argument("qp: h size");
  const double scale = 1.0 + H.cwiseAbs().maxCoeff();
  if ((H - H.transpose()).cwiseAbs().maxCoeff() > 1e-10 * scale)
    throw std::invalid_argument("qp: H not symmetric");
  Eigen::SelfAdjointEigenSolver<Mat> es(H);
  if (es.eigenvalues().minCoeff() < -1e-10 * scale)
    throw std::invalid_argument("qp: H not positive semidefinite");
}

std::string QpProblem::dump() const {
  std::ostringstream os;
  os.precision(17);
  os << "qp dim=" << dim() << " eq=" << A_eq.rows() << " ineq=" << G.rows() << "\nH\n"
     << H << "\ng\n"
     << g.transpose() << "\nA_eq | b_eq\n";
  for (int i = 0; i < A_eq.rows(); ++i) os << A_eq.row(i) << " | " << b_eq[i] << "\n";
  os << "G | h\n";
  for (int i = 0; i < G.rows(); ++i) os << G.row(i) << " | " << h[i] << "\n";
  return os.str();
}

QpSolution solve(const QpProblem& p, const QpSolution* warm_start) {
  const int d = p.dim();
  const int mi = static_cast<int>(p.G.rows());
  QpSolution sol;
  sol.ineq_duals = Vec::Zero(mi);

  Mat Ae;
  Vec be;
  if (!preprocess_equalities(p.A_eq, p.b_eq, Ae, be, sol.inconsistent_eq_rows)) {
    sol.status = QpStatus::infeasible;
    return sol;
  }
  const int max_iter = 10 * (d + static_cast<int>(p.A_eq.rows()) + mi);

  // Initial iterate: warm start projected onto the equalities, or the
  // minimum-norm equality solution.
  Vec x0;
  if (warm_start && warm_start->x.size() == d) {
    x0 = warm_start->x;
    if (Ae.rows() > 0) {
      const Vec r = Ae * x0 - be;
      x0 -= Ae.completeOrthogonalDecomposition().pseudoInverse() * r;
    }
  } else if (Ae.rows() > 0) {
    x0 = Ae.completeOrthogonalDecomposition().solve(be);
  } else {
    x0 = Vec::Zero(d);
  }

  int phase1_iters = 0;
  auto max_violation = [&](const Vec& x) {
    double v = 0.0;
    for (int i = 0; i < mi; ++i) v = std::max(v, p.G.row(i).dot(x) - p.h[i]);
    return v;
  };
  // Elastic phase 1: minimize the slack needed to satisfy G x <= h,
  // lightly anchored at the current iterate. The anchor leaves a residual
  // violation of order eps, so re-anchor and repeat; the violation
  // contracts geometrically for feasible problems.
  const double eps = 1e-8;
  for (int pass = 0; pass < 4 && max_violation(x0) > kFeasTol; ++pass) {
    const int dz = d + mi;
    Mat He = Mat::Zero(dz, dz);
    He.topLeftCorner(d, d) = eps * Mat::Identity(d, d);
    He.bottomRightCorner(mi, mi) = Mat::Identity(mi, mi);
    Vec ge = Vec::Zero(dz);
    ge.head(d) = -eps * x0;
    Mat Aez = Mat::Zero(Ae.rows(), dz);
    if (Ae.rows() > 0) Aez.leftCols(d) = Ae;
    Mat Ge(mi, dz);
    Ge.leftCols(d) = p.G;
    Ge.rightCols(mi) = -Mat::Identity(mi, mi);
    Vec z0 = Vec::Zero(dz);
    z0.head(d) = x0;
    std::vector<int> w0;
    for (int i = 0; i < mi; ++i) {
      const double v = p.G.row(i).dot(x0) - p.h[i];
      if (v > 0.0) {
        z0[d + i] = v;
        w0.push_back(i);
      }
    }
    auto ph1 = active_set_minimize(He, ge, Aez, be, Ge, p.h, z0, w0, 10 * (dz + mi));
    phase1_iters += ph1.iterations;
    const Vec s = ph1.x.tail(mi);
    const double prev = max_violation(x0);
    x0 = ph1.x.head(d);
    const bool stalled = max_violation(x0) > 0.5 * prev;
    if (!ph1.optimal || (stalled && s.lpNorm<Eigen::Infinity>() > kFeasTol)) {
      sol.status = QpStatus::infeasible;
      sol.iterations = phase1_iters;
      for (int i = 0; i < mi; ++i)
        if (s[i] > kFeasTol) sol.infeasible_rows.push_back(i);
      if (sol.infeasible_rows.empty() && !ph1.optimal) sol.status = QpStatus::max_iter;
      return sol;
    }
  }
  if (max_violation(x0) > kFeasTol) {
    sol.status = QpStatus::infeasible;
    sol.iterations = phase1_iters;
    for (int i = 0; i < mi; ++i)
      if (p.G.row(i).dot(x0) - p.h[i] > kFeasTol) sol.infeasible_rows.push_back(i);
    return sol;
  }

  // Phase 2 working set: warm-started rows still active and independent.
  std::vector<int> w0;
  if (warm_start) {
    for (int i : warm_start->active_set) {
      if (i < 0 || i >= mi) continue;
      if (std::abs(p.G.row(i).dot(x0) - p.h[i]) <= 1e-9 * (1.0 + std::abs(p.h[i])))
        w0.push_back(i);
    }
  }
  auto ph2 = active_set_minimize(p.H, p.g, Ae, be, p.G, p.h, x0, w0, max_iter);
  sol.iterations = phase1_iters + ph2.iterations;
  sol.x = ph2.x;
  sol.active_set = ph2.working;
  sol.objective = 0.5 * ph2.x.dot(p.H * ph2.x) + p.g.dot(ph2.x);
  if (ph2.singular) {
    sol.status = QpStatus::singular;
    return sol;
  }
  if (!ph2.optimal) {
    sol.status = QpStatus::max_iter;
    return sol;
  }
  sol.ineq_duals = ph2.ineq_duals;
  // Map duals of the reduced equality system back onto the original rows.
  sol.eq_duals = Vec::Zero(p.A_eq.rows());
  if (Ae.rows() > 0) {
    Eigen::ColPivHouseholderQR<Mat> qr(p.A_eq.transpose());
    qr.setThreshold(1e-10);
    const auto perm = qr.colsPermutation().indices();
    std::vector<int> keep(perm.data(), perm.data() + qr.rank());
    std::sort(keep.begin(), keep.end());
    for (int i = 0; i < Ae.rows(); ++i) sol.eq_duals[keep[i]] = ph2.eq_duals[i];
  }

  const Vec grad = p.H * sol.x + p.g + p.A_eq.transpose() * sol.eq_duals +
                   p.G.transpose() * sol.ineq_duals;
  const double scale =
      1.0 + p.g.lpNorm<Eigen::Infinity>() + (p.H * sol.x).lpNorm<Eigen::Infinity>();
  sol.stationarity = grad.lpNorm<Eigen::Infinity>() / scale;
  double pf = 0.0;
  if (p.A_eq.rows() > 0) pf = (p.A_eq * sol.x - p.b_eq).lpNorm<Eigen::Infinity>();
  for (int i = 0; i < mi; ++i) pf = std::max(pf, p.G.row(i).dot(sol.x) - p.h[i]);
  sol.primal_feasibility = pf / (1.0 + sol.x.lpNorm<Eigen::Infinity>());
  double comp = 0.0;
  for (int i = 0; i < mi; ++i)
    comp = std::max(comp, std::abs(sol.ineq_duals[i] * (p.G.row(i).dot(sol.x) - p.h[i])));
  sol.complementarity = comp / scale;
  sol.status = (sol.stationarity <= 1e-7 && sol.primal_feasibility <= 1e-8 &&
                sol.complementarity <= 1e-8)
                   ? QpStatus::optimal
                   : QpStatus::max_iter;
  return sol;
}

KktResult solve_equality_kkt(const Mat& A, const Vec& b, bool allow_rank_deficient) {
  KktResult res;
  const int nu = static_cast<int>(A.cols());
  const int r = static_cast<int>(A.rows());
  if (b.size() != r) throw std::invalid_argument("solve_equality_kkt: b size");

  // K is invertible iff A has full row rank; rank and conditioning come
  // from a rank-revealing QR since LU condition estimates are unreliable
  // at exact singularity.
  Eigen::ColPivHouseholderQR<Mat> qr(A.transpose());
  qr.setThreshold(1e-10);
  const bool full_row_rank = qr.rank() == r;
  double rcond_proxy = 0.0;
  if (full_row_rank && r > 0) {
    const Vec diag = qr.matrixR().topLeftCorner(r, r).diagonal().cwiseAbs();
    rcond_proxy = diag.minCoeff() / diag.maxCoeff();
  }

  if (full_row_rank && rcond_proxy >= 1e-10) {
    Mat K = Mat::Zero(nu + r, nu + r);
    K.topLeftCorner(nu, nu) = Mat::Identity(nu, nu);
    K.topRightCorner(nu, r) = A.transpose();
    K.bottomLeftCorner(r, nu) = A;
    Eigen::PartialPivLU<Mat> lu(K);
    Vec rhs = Vec::Zero(nu + r);
    rhs.tail(r) = b;
    const Vec sol = lu.solve(rhs);
    res.u = sol.head(nu);
    res.lambda = sol.tail(r);
    if (r >= 3) {
      Mat E = Mat::Zero(nu + r, 3);
      for (int j = 0; j < 3; ++j) E(nu + r - 3 + j, j) = 1.0;
      res.u_last_cols = lu.solve(E).topRows(nu);
    }
    res.residual = (A * res.u - b).norm();
    res.status = QpStatus::optimal;
    return res;
  }

  if (!allow_rank_deficient) {
    res.status = QpStatus::singular;
    return res;
  }
  // Rank-deficient A: the least-norm solution u = A^+ b still exists and
  // is unique whenever the system is consistent.
  Eigen::CompleteOrthogonalDecomposition<Mat> cod(A);
  cod.setThreshold(1e-10);
  res.u = cod.solve(b);
  res.residual = (A * res.u - b).norm();
  res.generalized = true;
  if (res.residual > 1e-8 * (1.0 + b.norm())) {
    res.status = QpStatus::singular;
    return res;
  }
  if (r >= 3) {
    Mat Eb = Mat::Zero(r, 3);
    Eb.bottomRows(3) = Mat3::Identity();
    res.u_last_cols = cod.solve(Eb);
  }
  res.lambda = -A.transpose().completeOrthogonalDecomposition().solve(res.u);
  res.status = QpStatus::optimal;
  return res;
}

}  // namespace iwbc
