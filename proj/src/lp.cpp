#include "bellgeo/lp.hpp"

#include "bellgeo/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <vector>

namespace bellgeo {

namespace {

using Eigen::Index;
using Eigen::MatrixXd;
using Eigen::RowVectorXd;
using Eigen::VectorXd;

constexpr double kInf = std::numeric_limits<double>::infinity();

enum class VarKind { Shifted, Negated, Split };

struct VarMap {
  VarKind kind;
  double anchor;  // lower bound (Shifted) or upper bound (Negated)
  Index col;
};

// min c^T x, A x = b, x >= 0, with b >= 0 after row flips.
struct StandardForm {
  MatrixXd A;
  VectorXd b;
  VectorXd c;
  std::vector<VarMap> vars;
  std::vector<double> row_sign;
  Index n_eq = 0;
  Index n_in = 0;
};

double lower_of(const LinearProgram& lp, Index j) { return lp.lower.size() ? lp.lower(j) : 0.0; }
double upper_of(const LinearProgram& lp, Index j) { return lp.upper.size() ? lp.upper(j) : kInf; }

StandardForm to_standard_form(const LinearProgram& lp) {
  StandardForm sf;
  const Index n = lp.num_vars();
  sf.n_eq = lp.eq_matrix.rows();
  sf.n_in = lp.ineq_matrix.rows();

  Index col = 0;
  std::vector<Index> bounded;  // vars needing an explicit upper-bound row
  sf.vars.reserve(static_cast<std::size_t>(n));
  for (Index j = 0; j < n; ++j) {
    const double lo = lower_of(lp, j);
    const double hi = upper_of(lp, j);
    if (std::isfinite(lo)) {
      sf.vars.push_back({VarKind::Shifted, lo, col++});
      if (std::isfinite(hi)) bounded.push_back(j);
    } else if (std::isfinite(hi)) {
      sf.vars.push_back({VarKind::Negated, hi, col++});
    } else {
      sf.vars.push_back({VarKind::Split, 0.0, col});
      col += 2;
    }
  }
  const Index n_struct = col;
  const Index n_bound = static_cast<Index>(bounded.size());
  const Index rows = sf.n_eq + sf.n_in + n_bound;
  const Index cols = n_struct + sf.n_in + n_bound;
  sf.A = MatrixXd::Zero(rows, cols);
  sf.b = VectorXd::Zero(rows);
  sf.c = VectorXd::Zero(cols);

  auto put_row = [&](Index row, const auto& coeffs, double rhs) {
    for (Index j = 0; j < n; ++j) {
      const double a = coeffs(j);
      if (a == 0.0) continue;
      const VarMap& v = sf.vars[static_cast<std::size_t>(j)];
      switch (v.kind) {
        case VarKind::Shifted:
          sf.A(row, v.col) += a;
          rhs -= a * v.anchor;
          break;
        case VarKind::Negated:
          sf.A(row, v.col) -= a;
          rhs -= a * v.anchor;
          break;
        case VarKind::Split:
          sf.A(row, v.col) += a;
          sf.A(row, v.col + 1) -= a;
          break;
      }
    }
    sf.b(row) = rhs;
  };
  for (Index i = 0; i < sf.n_eq; ++i) put_row(i, lp.eq_matrix.row(i), lp.eq_rhs(i));
  for (Index i = 0; i < sf.n_in; ++i) {
    put_row(sf.n_eq + i, lp.ineq_matrix.row(i), lp.ineq_rhs(i));
    sf.A(sf.n_eq + i, n_struct + i) = 1.0;
  }
  for (Index k = 0; k < n_bound; ++k) {
    const Index j = bounded[static_cast<std::size_t>(k)];
    const Index row = sf.n_eq + sf.n_in + k;
    sf.A(row, sf.vars[static_cast<std::size_t>(j)].col) = 1.0;
    sf.A(row, n_struct + sf.n_in + k) = 1.0;
    sf.b(row) = upper_of(lp, j) - lower_of(lp, j);
  }
  for (Index j = 0; j < n; ++j) {
    const VarMap& v = sf.vars[static_cast<std::size_t>(j)];
    const double cj = lp.objective(j);
    switch (v.kind) {
      case VarKind::Shifted: sf.c(v.col) = cj; break;
      case VarKind::Negated: sf.c(v.col) = -cj; break;
      case VarKind::Split:
        sf.c(v.col) = cj;
        sf.c(v.col + 1) = -cj;
        break;
    }
  }
  sf.row_sign.assign(static_cast<std::size_t>(rows), 1.0);
  for (Index i = 0; i < rows; ++i) {
    if (sf.b(i) < 0.0) {
      sf.A.row(i) *= -1.0;
      sf.b(i) = -sf.b(i);
      sf.row_sign[static_cast<std::size_t>(i)] = -1.0;
    }
  }
  return sf;
}

class TableauSimplex {
 public:
  TableauSimplex(const StandardForm& sf, const SolverOptions& opts) : sf_(sf), opts_(opts) {
    rows_ = sf.A.rows();
    cols_ = sf.A.cols();
    basis_.assign(static_cast<std::size_t>(rows_), -1);

    // Crash basis: a positive unit column per row where one exists.
    std::vector<char> used(static_cast<std::size_t>(cols_), 0);
    for (Index j = 0; j < cols_; ++j) {
      Index nz_row = -1;
      int nnz = 0;
      for (Index i = 0; i < rows_ && nnz < 2; ++i)
        if (sf.A(i, j) != 0.0) {
          ++nnz;
          nz_row = i;
        }
      if (nnz == 1 && sf.A(nz_row, j) > 0.0 && basis_[static_cast<std::size_t>(nz_row)] < 0) {
        basis_[static_cast<std::size_t>(nz_row)] = j;
        used[static_cast<std::size_t>(j)] = 1;
      }
    }
    n_art_ = 0;
    for (Index i = 0; i < rows_; ++i)
      if (basis_[static_cast<std::size_t>(i)] < 0) ++n_art_;

    rhs_ = cols_ + n_art_;
    T_ = MatrixXd::Zero(rows_ + 2, rhs_ + 1);
    T_.topLeftCorner(rows_, cols_) = sf.A;
    T_.col(rhs_).head(rows_) = sf.b;
    Index a = cols_;
    for (Index i = 0; i < rows_; ++i) {
      auto& bi = basis_[static_cast<std::size_t>(i)];
      if (bi < 0) {
        T_(i, a) = 1.0;
        bi = a++;
      } else {
        T_.row(i).head(rhs_ + 1) /= T_(i, bi);
      }
    }
    // Reduced-cost rows: phase 2 at rows_, phase 1 at rows_ + 1.
    T_.row(rows_).head(cols_) = sf.c.transpose();
    for (Index j = cols_; j < rhs_; ++j) T_(rows_ + 1, j) = 1.0;
    for (Index i = 0; i < rows_; ++i) {
      const Index bi = basis_[static_cast<std::size_t>(i)];
      const double cb = bi < cols_ ? sf.c(bi) : 0.0;
      if (cb != 0.0) T_.row(rows_) -= cb * T_.row(i);
      if (bi >= cols_) T_.row(rows_ + 1) -= T_.row(i);
    }
    max_iter_ = opts.max_iterations > 0 ? opts.max_iterations : static_cast<int>(20 * (rows_ + cols_) + 1000);
  }

  LPStatus run() {
    if (n_art_ > 0) {
      const LPStatus s1 = iterate(rows_ + 1);
      if (s1 != LPStatus::Optimal) return LPStatus::NumericalFailure;
      const double infeas = -T_(rows_ + 1, rhs_);
      const double scale = 1.0 + (sf_.b.size() ? sf_.b.cwiseAbs().maxCoeff() : 0.0);
      if (infeas > opts_.feasibility_tol * scale) return LPStatus::Infeasible;
      drive_out_artificials();
    }
    return iterate(rows_);
  }

  int iterations() const { return iterations_; }
  const std::vector<Index>& basis() const { return basis_; }
  Index n_art() const { return n_art_; }

  VectorXd basic_values() const {
    VectorXd x = VectorXd::Zero(rhs_);
    for (Index i = 0; i < rows_; ++i) x(basis_[static_cast<std::size_t>(i)]) = T_(i, rhs_);
    return x;
  }

 private:
  void pivot(Index r, Index q) {
    const double piv = T_(r, q);
    T_.row(r) /= piv;
    VectorXd col = T_.col(q);
    col(r) = 0.0;
    for (Index j = 0; j <= rhs_; ++j) {
      const double f = T_(r, j);
      if (f != 0.0) T_.col(j).noalias() -= f * col;
    }
    T_.col(q).setZero();
    T_(r, q) = 1.0;
    basis_[static_cast<std::size_t>(r)] = q;
  }

  Index entering(Index cost_row, bool bland) const {
    Index best = -1;
    double best_val = -opts_.optimality_tol;
    for (Index j = 0; j < cols_; ++j) {
      const double d = T_(cost_row, j);
      if (d < best_val) {
        best = j;
        if (bland) break;
        best_val = d;
      }
    }
    return best;
  }

  Index leaving(Index q, bool bland) const {
    Index best = -1;
    double best_ratio = kInf;
    double best_piv = 0.0;
    for (Index i = 0; i < rows_; ++i) {
      const double a = T_(i, q);
      if (a <= opts_.pivot_tol) continue;
      const double ratio = std::max(T_(i, rhs_), 0.0) / a;
      const double tie = 1e-12 * (1.0 + best_ratio);
      if (best < 0 || ratio < best_ratio - tie) {
        best = i;
        best_ratio = ratio;
        best_piv = a;
      } else if (ratio <= best_ratio + tie) {
        const bool better = bland ? basis_[static_cast<std::size_t>(i)] < basis_[static_cast<std::size_t>(best)]
                                  : a > best_piv;
        if (better) {
          best = i;
          best_ratio = std::min(best_ratio, ratio);
          best_piv = a;
        }
      }
    }
    return best;
  }

  LPStatus iterate(Index cost_row) {
    int streak = 0;
    while (true) {
      const bool bland = streak >= opts_.degenerate_streak;
      const Index q = entering(cost_row, bland);
      if (q < 0) return LPStatus::Optimal;
      const Index r = leaving(q, bland);
      if (r < 0) return LPStatus::Unbounded;
      const bool degenerate = T_(r, rhs_) <= 1e-12;
      pivot(r, q);
      streak = degenerate ? streak + 1 : 0;
      if (++iterations_ > max_iter_) return LPStatus::NumericalFailure;
    }
  }

  void drive_out_artificials() {
    for (Index i = 0; i < rows_; ++i) {
      if (basis_[static_cast<std::size_t>(i)] < cols_) continue;
      Index best = -1;
      double best_abs = opts_.pivot_tol;
      for (Index j = 0; j < cols_; ++j) {
        const double a = std::abs(T_(i, j));
        if (a > best_abs) {
          best_abs = a;
          best = j;
        }
      }
      if (best >= 0) {
        T_(i, rhs_) = 0.0;
        pivot(i, best);
        ++iterations_;
      }
      // otherwise the row is redundant; the artificial stays basic at zero
    }
  }

  const StandardForm& sf_;
  const SolverOptions& opts_;
  Index rows_ = 0;
  Index cols_ = 0;
  Index n_art_ = 0;
  Index rhs_ = 0;
  MatrixXd T_;
  std::vector<Index> basis_;
  int iterations_ = 0;
  int max_iter_ = 0;
};

VectorXd to_original(const StandardForm& sf, const VectorXd& xs, Index n) {
  VectorXd x(n);
  for (Index j = 0; j < n; ++j) {
    const VarMap& v = sf.vars[static_cast<std::size_t>(j)];
    switch (v.kind) {
      case VarKind::Shifted: x(j) = v.anchor + xs(v.col); break;
      case VarKind::Negated: x(j) = v.anchor - xs(v.col); break;
      case VarKind::Split: x(j) = xs(v.col) - xs(v.col + 1); break;
    }
  }
  return x;
}

double violation(const LinearProgram& lp, const VectorXd& x) {
  double v = 0.0;
  if (lp.eq_matrix.rows() > 0) v = std::max(v, (lp.eq_matrix * x - lp.eq_rhs).cwiseAbs().maxCoeff());
  if (lp.ineq_matrix.rows() > 0) v = std::max(v, (lp.ineq_matrix * x - lp.ineq_rhs).maxCoeff());
  for (Index j = 0; j < x.size(); ++j) {
    v = std::max(v, lower_of(lp, j) - x(j));
    v = std::max(v, x(j) - upper_of(lp, j));
  }
  return std::max(v, 0.0);
}

}  // namespace

void LinearProgram::validate() const {
  const Index n = num_vars();
  auto fail = [](const char* msg) { throw InvalidArgument(std::string("linear program: ") + msg); };
  if (!objective.allFinite()) fail("objective must be finite");
  if (eq_matrix.rows() != eq_rhs.size()) fail("equality rhs length mismatch");
  if (eq_matrix.rows() > 0 && eq_matrix.cols() != n) fail("equality matrix column mismatch");
  if (ineq_matrix.rows() != ineq_rhs.size()) fail("inequality rhs length mismatch");
  if (ineq_matrix.rows() > 0 && ineq_matrix.cols() != n) fail("inequality matrix column mismatch");
  if (!eq_matrix.allFinite() || !eq_rhs.allFinite()) fail("equality data must be finite");
  if (!ineq_matrix.allFinite() || !ineq_rhs.allFinite()) fail("inequality data must be finite");
  if (lower.size() != 0 && lower.size() != n) fail("lower bound length mismatch");
  if (upper.size() != 0 && upper.size() != n) fail("upper bound length mismatch");
  for (Index j = 0; j < n; ++j) {
    const double lo = lower_of(*this, j);
    const double hi = upper_of(*this, j);
    if (std::isnan(lo) || std::isnan(hi) || lo == kInf || hi == -kInf || lo > hi) fail("invalid variable bounds");
  }
}

std::string to_string(LPStatus s) {
  switch (s) {
    case LPStatus::Optimal: return "optimal";
    case LPStatus::Infeasible: return "infeasible";
    case LPStatus::Unbounded: return "unbounded";
    case LPStatus::NumericalFailure: return "numerical-failure";
  }
  return "unknown";
}

LPSolution solve(const LinearProgram& lp, const SolverOptions& opts) {
  lp.validate();
  const Index n = lp.num_vars();
  const StandardForm sf = to_standard_form(lp);
  TableauSimplex simplex(sf, opts);

  LPSolution sol;
  sol.status = simplex.run();
  sol.iterations = simplex.iterations();
  sol.eq_duals = VectorXd::Zero(sf.n_eq);
  sol.ineq_duals = VectorXd::Zero(sf.n_in);
  if (sol.status != LPStatus::Optimal) {
    sol.x = VectorXd::Zero(n);
    return sol;
  }

  const Index rows = sf.A.rows();
  const Index cols = sf.A.cols();
  const auto& basis = simplex.basis();
  VectorXd xs_tab = simplex.basic_values().head(cols);

  // Refactorize the optimal basis for x_B and the duals.
  MatrixXd B = MatrixXd::Zero(rows, rows);
  VectorXd cb = VectorXd::Zero(rows);
  for (Index i = 0; i < rows; ++i) {
    const Index j = basis[static_cast<std::size_t>(i)];
    if (j < cols) {
      B.col(i) = sf.A.col(j);
      cb(i) = sf.c(j);
    } else {
      B(i, i) = 1.0;  // redundant row kept by its artificial
    }
  }
  VectorXd x = to_original(sf, xs_tab, n);
  double viol = violation(lp, x);
  VectorXd y = VectorXd::Zero(rows);
  if (rows > 0) {
    Eigen::PartialPivLU<MatrixXd> lu(B);
    const VectorXd xb = lu.solve(sf.b);
    VectorXd xs_lu = VectorXd::Zero(cols);
    for (Index i = 0; i < rows; ++i) {
      const Index j = basis[static_cast<std::size_t>(i)];
      if (j < cols) xs_lu(j) = xb(i);
    }
    const VectorXd x_lu = to_original(sf, xs_lu, n);
    const double viol_lu = violation(lp, x_lu);
    if (xb.allFinite() && viol_lu <= viol) {
      x = x_lu;
      viol = viol_lu;
      xs_tab = xs_lu;
    }
    y = lu.transpose().solve(cb);
    if (!y.allFinite()) y.setZero();
  }
  sol.x = x;
  sol.basis.resize(static_cast<std::size_t>(rows));
  for (Index i = 0; i < rows; ++i) {
    const Index j = basis[static_cast<std::size_t>(i)];
    sol.basis[static_cast<std::size_t>(i)] = j < cols ? j : -1;
  }
  sol.objective_value = lp.objective.dot(x);
  sol.max_constraint_violation = viol;
  const double primal = sf.c.dot(xs_tab);
  const double dual = rows > 0 ? sf.b.dot(y) : 0.0;
  sol.duality_gap = std::abs(primal - dual);
  for (Index i = 0; i < sf.n_eq; ++i) sol.eq_duals(i) = sf.row_sign[static_cast<std::size_t>(i)] * y(i);
  for (Index i = 0; i < sf.n_in; ++i)
    sol.ineq_duals(i) = sf.row_sign[static_cast<std::size_t>(sf.n_eq + i)] * y(sf.n_eq + i);

  const double reduced_min = cols > 0 ? (sf.c - sf.A.transpose() * y).minCoeff() : 0.0;
  const double cscale = 1.0 + (sf.c.size() ? sf.c.cwiseAbs().maxCoeff() : 0.0);
  if (viol > opts.feasibility_tol || reduced_min < -1e-7 * cscale ||
      sol.duality_gap > opts.optimality_tol * (1.0 + std::abs(primal)))
    sol.status = LPStatus::NumericalFailure;
  return sol;
}

DualWarmStart::DualWarmStart(MatrixXd A, VectorXd c, SolverOptions opts)
    : A_(std::move(A)), c_(std::move(c)), opts_(opts) {
  if (A_.cols() != c_.size()) throw InvalidArgument("warm start: objective length mismatch");
  if (!A_.allFinite() || !c_.allFinite()) throw InvalidArgument("warm start: data must be finite");
}

LPSolution DualWarmStart::cold(const VectorXd& b) {
  ++cold_;
  LinearProgram lp;
  lp.objective = c_;
  lp.eq_matrix = A_;
  lp.eq_rhs = b;
  LPSolution sol = bellgeo::solve(lp, opts_);
  basis_.clear();
  if (sol.status == LPStatus::Optimal &&
      std::none_of(sol.basis.begin(), sol.basis.end(), [](Index j) { return j < 0; })) {
    basis_ = sol.basis;
    if (!refactor()) basis_.clear();
  }
  return sol;
}

bool DualWarmStart::refactor() {
  const Index m = A_.rows();
  MatrixXd B(m, m);
  VectorXd cb(m);
  for (Index i = 0; i < m; ++i) {
    B.col(i) = A_.col(basis_[static_cast<std::size_t>(i)]);
    cb(i) = c_(basis_[static_cast<std::size_t>(i)]);
  }
  Eigen::PartialPivLU<MatrixXd> lu(B);
  Binv_ = lu.inverse();
  if (!Binv_.allFinite()) return false;
  const VectorXd y = Binv_.transpose() * cb;
  d_ = c_ - A_.transpose() * y;
  is_basic_.assign(static_cast<std::size_t>(A_.cols()), 0);
  for (Index j : basis_) {
    is_basic_[static_cast<std::size_t>(j)] = 1;
    d_(j) = 0.0;
  }
  since_refactor_ = 0;
  return true;
}

bool DualWarmStart::warm(const VectorXd& b, LPSolution& out) {
  const Index m = A_.rows();
  const Index n = A_.cols();
  const double bscale = 1.0 + (m ? b.cwiseAbs().maxCoeff() : 0.0);
  const double cscale = 1.0 + (n ? c_.cwiseAbs().maxCoeff() : 0.0);
  if (d_.minCoeff() < -1e-9 * cscale) return false;
  VectorXd xb = Binv_ * b;
  const int limit = opts_.max_iterations > 0 ? opts_.max_iterations : static_cast<int>(4 * (m + n) + 100);
  int pivots = 0;
  RowVectorXd alpha(n);
  for (;;) {
    // Dual steepest edge with exact row norms of B^-1.
    const double floor_tol = -opts_.feasibility_tol * bscale * 0.01;
    Index r = -1;
    double score = 0.0;
    for (Index i = 0; i < m; ++i) {
      if (xb(i) >= floor_tol) continue;
      const double s = xb(i) * xb(i) / Binv_.row(i).squaredNorm();
      if (s > score) {
        score = s;
        r = i;
      }
    }
    if (r < 0) break;
    if (++pivots > limit) return false;
    alpha.noalias() = Binv_.row(r) * A_;
    Index q = -1;
    double best = kInf;
    double best_abs = 0.0;
    for (Index j = 0; j < n; ++j) {
      if (is_basic_[static_cast<std::size_t>(j)]) continue;
      const double a = alpha(j);
      if (a >= -opts_.pivot_tol * 10.0) continue;
      const double ratio = std::max(d_(j), 0.0) / -a;
      if (ratio < best - 1e-12 || (ratio <= best + 1e-12 && -a > best_abs)) {
        best = std::min(best, ratio);
        best_abs = -a;
        q = j;
      }
    }
    if (q < 0) return false;  // primal infeasible or numerically stuck; let the cold path decide
    const VectorXd col = Binv_ * A_.col(q);
    const double piv = col(r);
    if (std::abs(piv) < opts_.pivot_tol || std::abs(piv - alpha(q)) > 1e-7 * (1.0 + std::abs(piv))) {
      if (!refactor()) return false;
      xb = Binv_ * b;
      continue;
    }
    const double theta = xb(r) / piv;
    xb -= theta * col;
    xb(r) = theta;
    const RowVectorXd pivot_row = Binv_.row(r) / piv;
    for (Index i = 0; i < m; ++i)
      if (i != r && col(i) != 0.0) Binv_.row(i) -= col(i) * pivot_row;
    Binv_.row(r) = pivot_row;
    const double dq = d_(q) / alpha(q);
    d_ -= dq * alpha.transpose();
    const Index leave = basis_[static_cast<std::size_t>(r)];
    d_(leave) = -dq;
    d_(q) = 0.0;
    is_basic_[static_cast<std::size_t>(leave)] = 0;
    is_basic_[static_cast<std::size_t>(q)] = 1;
    basis_[static_cast<std::size_t>(r)] = q;
    if (++since_refactor_ >= 64) {
      if (!refactor()) return false;
      xb = Binv_ * b;
    }
  }

  VectorXd x = VectorXd::Zero(n);
  VectorXd cb(m);
  for (Index i = 0; i < m; ++i) {
    x(basis_[static_cast<std::size_t>(i)]) = std::max(xb(i), 0.0);
    cb(i) = c_(basis_[static_cast<std::size_t>(i)]);
  }
  const VectorXd y = Binv_.transpose() * cb;
  const double viol = m ? (A_ * x - b).cwiseAbs().maxCoeff() : 0.0;
  const double reduced_min = n ? (c_ - A_.transpose() * y).minCoeff() : 0.0;
  const double primal = c_.dot(x);
  const double gap = std::abs(primal - b.dot(y));
  if (viol > opts_.feasibility_tol || reduced_min < -1e-7 * cscale ||
      gap > opts_.optimality_tol * (1.0 + std::abs(primal)))
    return false;
  out.status = LPStatus::Optimal;
  out.x = std::move(x);
  out.objective_value = primal;
  out.max_constraint_violation = viol;
  out.duality_gap = gap;
  out.eq_duals = y;
  out.ineq_duals.resize(0);
  out.iterations = pivots;
  out.basis = basis_;
  return true;
}

LPSolution DualWarmStart::solve(const VectorXd& b) {
  if (b.size() != A_.rows() || !b.allFinite()) throw InvalidArgument("warm start: bad right-hand side");
  if (!basis_.empty()) {
    LPSolution sol;
    if (warm(b, sol)) {
      ++warm_;
      return sol;
    }
    // The basis may have drifted; rebuild it before the next warm attempt.
    if (refactor()) {
      if (warm(b, sol)) {
        ++warm_;
        return sol;
      }
    }
  }
  return cold(b);
}

void write_lp(std::ostream& os, const LinearProgram& lp) {
  const Index n = lp.num_vars();
  auto terms = [&](const auto& row) {
    bool first = true;
    for (Index j = 0; j < n; ++j) {
      if (row(j) == 0.0) continue;
      os << (first ? "" : " ") << (row(j) < 0 ? "- " : (first ? "" : "+ ")) << std::abs(row(j)) << " x" << j;
      first = false;
    }
    if (first) os << "0";
  };
  os << "min: ";
  terms(lp.objective);
  os << "\n";
  for (Index i = 0; i < lp.eq_matrix.rows(); ++i) {
    os << "eq" << i << ": ";
    terms(lp.eq_matrix.row(i));
    os << " = " << lp.eq_rhs(i) << "\n";
  }
  for (Index i = 0; i < lp.ineq_matrix.rows(); ++i) {
    os << "in" << i << ": ";
    terms(lp.ineq_matrix.row(i));
    os << " <= " << lp.ineq_rhs(i) << "\n";
  }
  for (Index j = 0; j < n; ++j) os << "bound: " << lower_of(lp, j) << " <= x" << j << " <= " << upper_of(lp, j) << "\n";
}

}  // namespace bellgeo
