#pragma once

#include <vector>

#include "iwbc/types.hpp"

namespace iwbc {

enum class QpStatus { optimal, infeasible, max_iter, singular };

const char* to_string(QpStatus s);

/// min 1/2 x^T H x + g^T x  s.t.  A_eq x = b_eq,  G x <= h.
/// Variable metadata records how the decision vector splits into the
/// acceleration block followed by the stacked contact-force block.
struct QpProblem {
  Mat H;
  Vec g;
  Mat A_eq;
  Vec b_eq;
  Mat G;
  Vec h;
  int qdd_dim = 0;
  int f_dim = 0;

  int dim() const { return static_cast<int>(H.rows()); }
  /// Throws std::invalid_argument on inconsistent dimensions, asymmetric
  /// H, or H with an eigenvalue below -1e-10 (scaled).
  void validate() const;
  /// Plain text dump (dimensions, then H, g, A_eq|b_eq, G|h) for
  /// offline debugging.
  std::string dump() const;
};

struct QpSolution {
  Vec x;
  std::vector<int> active_set;  ///< inequality rows active at the optimum
  double objective = 0.0;
  QpStatus status = QpStatus::max_iter;
  Vec eq_duals;
  Vec ineq_duals;
  std::vector<int> infeasible_rows;       ///< inequality certificate rows
  std::vector<int> inconsistent_eq_rows;  ///< contradictory equality rows
  int iterations = 0;
  double stationarity = 0.0;
  double primal_feasibility = 0.0;
  double complementarity = 0.0;
};

/// Primal active-set solve. Deterministic: ties in blocking and dropping
/// choices break toward the lowest row index. An optional warm start
/// seeds the working set and the initial iterate from a previous
/// solution. Status optimal certifies KKT residuals within
/// (1e-7, 1e-8, 1e-8) relative tolerances.
QpSolution solve(const QpProblem& p, const QpSolution* warm_start = nullptr);

/// Least-norm equality-constrained solve, min 1/2 u^T u s.t. A u = b,
/// through the KKT factorization K = [[I, A^T], [A, 0]].
struct KktResult {
  Vec u;
  Vec lambda;
  /// u-rows of the last three columns of K^{-1}: maps the last three
  /// entries of b to u.
  Mat u_last_cols;
  QpStatus status = QpStatus::singular;
  double residual = 0.0;
  /// Set when the rank-deficient-but-consistent fallback produced the
  /// least-norm solution instead of the dense K factorization.
  bool generalized = false;
};

/// When A is not full row rank: with allow_rank_deficient the solver
/// falls back to a rank-revealing least-norm solve and reports
/// generalized = true (status singular only if A u = b is inconsistent);
/// without it, status singular is returned immediately.
KktResult solve_equality_kkt(const Mat& A, const Vec& b, bool allow_rank_deficient = false);

}  // namespace iwbc
