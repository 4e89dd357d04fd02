#pragma once

#include <Eigen/Dense>

#include <iosfwd>
#include <string>
#include <vector>

namespace bellgeo {

/// minimize c^T x  s.t.  A_eq x = b_eq,  A_in x <= b_in,  lower <= x <= upper.
///
/// Empty bound vectors mean x >= 0. Bounds may be +-infinity.
struct LinearProgram {
  Eigen::VectorXd objective;
  Eigen::MatrixXd eq_matrix;
  Eigen::VectorXd eq_rhs;
  Eigen::MatrixXd ineq_matrix;
  Eigen::VectorXd ineq_rhs;
  Eigen::VectorXd lower;
  Eigen::VectorXd upper;

  Eigen::Index num_vars() const { return objective.size(); }
  /// Throws InvalidArgument on inconsistent shapes or non-finite data.
  void validate() const;
};

enum class LPStatus { Optimal, Infeasible, Unbounded, NumericalFailure };

std::string to_string(LPStatus s);

struct LPSolution {
  LPStatus status = LPStatus::NumericalFailure;
  Eigen::VectorXd x;
  double objective_value = 0.0;
  double max_constraint_violation = 0.0;
  /// |primal - dual| objective at the final basis.
  double duality_gap = 0.0;
  /// Lagrange multipliers: c = A_eq^T y_eq + A_in^T y_in + (bound multipliers),
  /// with y_in <= 0.
  Eigen::VectorXd eq_duals;
  Eigen::VectorXd ineq_duals;
  int iterations = 0;
  /// Basic standard-form column per constraint row (-1 for a redundant row
  /// held by an artificial). For LPs with only equality rows and x >= 0 the
  /// columns are the original variable indices.
  std::vector<Eigen::Index> basis;
};

struct SolverOptions {
  double feasibility_tol = 1e-9;
  double optimality_tol = 1e-9;
  double pivot_tol = 1e-11;
  /// Consecutive degenerate pivots before switching to Bland's rule.
  int degenerate_streak = 25;
  /// 0 picks 20 * (rows + cols) + 1000.
  int max_iterations = 0;
};

/// Dense two-phase primal simplex on the tableau.
///
/// Dantzig pricing with a deterministic switch to Bland's rule on degenerate
/// streaks; the final basis is refactorized with LU to recompute x and the
/// duals. Identical input gives identical output.
LPSolution solve(const LinearProgram& lp, const SolverOptions& opts = {});

/// Re-solves min c^T x, A x = b, x >= 0 for a sequence of right-hand sides.
///
/// Reduced costs do not depend on b, so the previous optimal basis stays dual
/// feasible and the dual simplex method restores primal feasibility in a few
/// pivots. Any warm solve that fails the final residual and reduced-cost
/// checks is redone from scratch with solve().
class DualWarmStart {
 public:
  DualWarmStart(Eigen::MatrixXd A, Eigen::VectorXd c, SolverOptions opts = {});

  LPSolution solve(const Eigen::VectorXd& b);

  int warm_solves() const { return warm_; }
  int cold_solves() const { return cold_; }

 private:
  LPSolution cold(const Eigen::VectorXd& b);
  bool refactor();
  bool warm(const Eigen::VectorXd& b, LPSolution& out);

  Eigen::MatrixXd A_;
  Eigen::VectorXd c_;
  SolverOptions opts_;
  std::vector<Eigen::Index> basis_;
  std::vector<char> is_basic_;
  Eigen::MatrixXd Binv_;
  Eigen::VectorXd d_;  // reduced costs
  int since_refactor_ = 0;
  int warm_ = 0;
  int cold_ = 0;
};

/// Text dump: one "min" line, then one line per constraint and bound.
void write_lp(std::ostream& os, const LinearProgram& lp);

}  // namespace bellgeo
