#include "bellgeo/norms.hpp"

#include "bellgeo/errors.hpp"
#include "bellgeo/lp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <thread>
#include <vector>

namespace bellgeo {

namespace {

using Eigen::Index;
using Eigen::MatrixXd;
using Eigen::VectorXd;

constexpr double kInf = std::numeric_limits<double>::infinity();

// Upper-triangle entry (i, j) of one of the two free diagonal blocks of
// Z = [[W1, M], [M^T, W2]], stored by its position in Z.
struct FreeEntry {
  Index i;
  Index j;
};

class Gamma2Barrier {
 public:
  explicit Gamma2Barrier(const MatrixXd& M) : rows_(M.rows()), cols_(M.cols()), size_(rows_ + cols_) {
    for (Index i = 0; i < rows_; ++i)
      for (Index j = i; j < rows_; ++j) entries_.push_back({i, j});
    for (Index i = 0; i < cols_; ++i)
      for (Index j = i; j < cols_; ++j) entries_.push_back({rows_ + i, rows_ + j});
    Z_ = MatrixXd::Zero(size_, size_);
    Z_.topRightCorner(rows_, cols_) = M;
    Z_.bottomLeftCorner(cols_, rows_) = M.transpose();
    const double c = Eigen::JacobiSVD<MatrixXd>(M).singularValues()(0) + 1.0;
    Z_.diagonal().setConstant(c);
    t_ = c + 1.0;
  }

  // Two barrier terms of dimension size_ each.
  double barrier_parameter() const { return 2.0 * static_cast<double>(size_); }

  // Returns the number of Newton steps taken, or -1 when the iteration stalls.
  int center(double s, int budget) {
    const Index nv = static_cast<Index>(entries_.size()) + 1;
    int steps = 0;
    double f = value(Z_, t_, s);
    while (steps < budget) {
      Eigen::LLT<MatrixXd> llt(Z_);
      const MatrixXd S = llt.solve(MatrixXd::Identity(size_, size_));
      const VectorXd gap = VectorXd::Constant(size_, t_) - Z_.diagonal();
      const VectorXd ig = gap.cwiseInverse();
      const VectorXd ig2 = ig.cwiseAbs2();

      VectorXd grad(nv);
      MatrixXd H = MatrixXd::Zero(nv, nv);
      const Index tv = nv - 1;
      grad(tv) = s - ig.sum();
      H(tv, tv) = ig2.sum();
      for (Index a = 0; a < tv; ++a) {
        const auto [I, J] = entries_[static_cast<std::size_t>(a)];
        const double ca = I == J ? 0.5 : 1.0;
        grad(a) = -2.0 * ca * S(I, J);
        if (I == J) {
          grad(a) += ig(I);
          H(a, a) += ig2(I);
          H(a, tv) = H(tv, a) = -ig2(I);
        }
        for (Index b = a; b < tv; ++b) {
          const auto [K, L] = entries_[static_cast<std::size_t>(b)];
          const double cb = K == L ? 0.5 : 1.0;
          const double h = 2.0 * ca * cb * (S(J, K) * S(I, L) + S(J, L) * S(I, K));
          H(a, b) += h;
          if (b != a) H(b, a) += h;
        }
      }
      const VectorXd step = -H.ldlt().solve(grad);
      const double slope = grad.dot(step);
      if (!step.allFinite()) return -1;
      // Newton decrement; at large s rounding noise keeps it from reaching zero.
      const double decrement = -slope / 2.0;
      if (decrement < 1e-9 || (steps >= 50 && decrement < 1e-5)) return steps;

      double alpha = 1.0;
      MatrixXd trial;
      double trial_t = 0.0;
      double trial_f = kInf;
      while (alpha > 1e-14) {
        trial = Z_;
        for (Index a = 0; a < tv; ++a) {
          const auto [I, J] = entries_[static_cast<std::size_t>(a)];
          trial(I, J) += alpha * step(a);
          if (I != J) trial(J, I) = trial(I, J);
        }
        trial_t = t_ + alpha * step(tv);
        trial_f = value(trial, trial_t, s);
        if (trial_f <= f + 0.25 * alpha * slope) break;
        alpha *= 0.5;
      }
      ++steps;
      if (alpha <= 1e-14) return decrement < 1e-5 ? steps : -1;
      Z_ = trial;
      t_ = trial_t;
      f = trial_f;
    }
    return steps;
  }

  const MatrixXd& Z() const { return Z_; }

 private:
  double value(const MatrixXd& Z, double t, double s) const {
    const VectorXd gap = VectorXd::Constant(size_, t) - Z.diagonal();
    if (gap.minCoeff() <= 0.0) return kInf;
    Eigen::LLT<MatrixXd> llt(Z);
    if (llt.info() != Eigen::Success) return kInf;
    const double logdet = 2.0 * llt.matrixLLT().diagonal().array().log().sum();
    return s * t - logdet - gap.array().log().sum();
  }

  Index rows_;
  Index cols_;
  Index size_;
  std::vector<FreeEntry> entries_;
  MatrixXd Z_;
  double t_ = 0.0;
};

}  // namespace

double pi_norm_dense(const MatrixXd& M, std::int64_t vertex_cap) {
  const Index r = M.rows();
  const Index c = M.cols();
  if (r < 1 || c < 1) throw InvalidArgument("pi_norm needs a non-empty matrix");
  if (!M.allFinite()) throw InvalidArgument("pi_norm needs finite entries");
  const long double count = std::ldexp(1.0L, static_cast<int>(r + c - 1));
  if (r + c - 1 > 62 || count > static_cast<long double>(vertex_cap))
    throw CapExceeded("pi_norm sign-dyad count exceeds the cap", count);
  if (M.cwiseAbs().maxCoeff() == 0.0) return 0.0;

  // u ranges over sign vectors with u_0 = +1, v over all sign vectors: each
  // dyad of the symmetric hull appears exactly once.
  const Index K = static_cast<Index>(count);
  LinearProgram lp;
  lp.objective = VectorXd::Ones(K);
  lp.eq_matrix.resize(r * c, K);
  lp.eq_rhs.resize(r * c);
  for (Index i = 0; i < r; ++i)
    for (Index j = 0; j < c; ++j) lp.eq_rhs(i * c + j) = M(i, j);
  for (Index k = 0; k < K; ++k) {
    const std::uint64_t ubits = static_cast<std::uint64_t>(k) >> c;  // bits of u_1..u_{r-1}
    const std::uint64_t vbits = static_cast<std::uint64_t>(k) & ((std::uint64_t(1) << c) - 1);
    for (Index i = 0; i < r; ++i) {
      const double ui = (i == 0 || !((ubits >> (i - 1)) & 1)) ? 1.0 : -1.0;
      for (Index j = 0; j < c; ++j) {
        const double vj = ((vbits >> j) & 1) ? -1.0 : 1.0;
        lp.eq_matrix(i * c + j, k) = ui * vj;
      }
    }
  }
  const LPSolution sol = solve(lp);
  if (sol.status != LPStatus::Optimal) {
    std::ostringstream os;
    os << "pi_norm LP ended with status " << to_string(sol.status);
    throw NumericalFailure(os.str());
  }
  return sol.objective_value;
}

Gamma2Result gamma2_factorization(const MatrixXd& M, const Gamma2Options& opts) {
  if (M.rows() < 1 || M.cols() < 1) throw InvalidArgument("gamma2 needs a non-empty matrix");
  if (M.rows() > 64 || M.cols() > 64) throw InvalidArgument("gamma2 supports at most 64 rows and columns");
  if (!M.allFinite()) throw InvalidArgument("gamma2 needs finite entries");
  Gamma2Result res;
  const double scale = M.cwiseAbs().maxCoeff();
  if (scale == 0.0) {
    res.left = MatrixXd::Zero(M.rows(), 1);
    res.right = MatrixXd::Zero(1, M.cols());
    return res;
  }

  Gamma2Barrier barrier(M / scale);
  const double nu = barrier.barrier_parameter();
  double s = 1.0;
  for (;;) {
    const int steps = barrier.center(s, opts.max_newton_steps - res.newton_steps);
    const double top = barrier.Z().diagonal().maxCoeff();
    if (steps < 0 || res.newton_steps + steps >= opts.max_newton_steps) {
      std::ostringstream os;
      os << "gamma2 barrier iteration did not converge; bracket [" << (top - nu / s) * scale << ", "
         << top * scale << "]";
      throw NumericalFailure(os.str());
    }
    res.newton_steps += steps;
    if (nu / s * scale <= opts.accuracy) break;
    s *= 8.0;
  }

  const MatrixXd& Z = barrier.Z();
  const Eigen::LLT<MatrixXd> llt(Z);
  if (llt.info() != Eigen::Success) throw NumericalFailure("gamma2 final matrix is not positive definite");
  const MatrixXd L = llt.matrixL();
  const double root = std::sqrt(scale);
  res.left = L.topRows(M.rows()) * root;
  res.right = L.bottomRows(M.cols()).transpose() * root;
  res.upper_bound = Z.diagonal().maxCoeff() * scale;
  res.lower_bound = std::max(0.0, res.upper_bound - nu / s * scale);
  res.value = res.upper_bound;
  return res;
}

NormReport classify(const MatrixXd& M, double tol) {
  NormReport rep;
  rep.pi_norm = pi_norm(M);
  rep.gamma2 = gamma2_norm(M);
  rep.entry_sup = entry_sup(M);
  rep.entry_l1 = entry_l1(M);
  const double n2 = static_cast<double>(M.rows()) * static_cast<double>(M.cols());
  rep.flatness_ratio = rep.entry_l1 > 0.0 ? n2 * rep.entry_sup / rep.entry_l1 : std::numeric_limits<double>::quiet_NaN();
  rep.is_classical = rep.pi_norm <= 1.0 + tol;
  // gamma_2 <= pi holds exactly; keep the flags consistent under rounding.
  rep.is_quantum = rep.gamma2 <= 1.0 + tol || rep.is_classical;
  return rep;
}

NormStats norm_experiment(int m, std::int64_t n_samples, const SamplerConfig& cfg, double tol, int threads) {
  if (m < 2 || m > 8) throw InvalidArgument("norm_experiment supports 2 <= m <= 8");
  if (n_samples < 1) throw InvalidArgument("n_samples must be >= 1");
  SamplerConfig draw = cfg;
  draw.n_samples = n_samples;
  draw.method = SamplingMethod::IidBox;
  const MatrixXd samples = iid_box_sample(static_cast<Index>(m) * m, draw).samples;

  NormStats st;
  st.m = m;
  st.n_samples = n_samples;
  st.pi.resize(n_samples);
  st.gamma2.resize(n_samples);
  st.ratio.resize(n_samples);
  st.flatness.resize(n_samples);
  auto work = [&](Index lo, Index hi) {
    for (Index k = lo; k < hi; ++k) {
      using RowMajor = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
      const MatrixXd T = Eigen::Map<const RowMajor>(samples.col(k).data(), m, m);
      const NormReport rep = classify(T, tol);
      st.pi(k) = rep.pi_norm;
      st.gamma2(k) = rep.gamma2;
      st.ratio(k) = rep.pi_norm / rep.gamma2;
      st.flatness(k) = rep.flatness_ratio;
    }
  };
  threads = std::max(1, std::min<int>(threads, static_cast<int>(n_samples)));
  if (threads == 1) {
    work(0, n_samples);
  } else {
    std::vector<std::thread> pool;
    const Index chunk = (n_samples + threads - 1) / threads;
    for (int t = 0; t < threads; ++t) {
      const Index lo = std::min<Index>(n_samples, t * chunk);
      pool.emplace_back(work, lo, std::min<Index>(n_samples, lo + chunk));
    }
    for (auto& th : pool) th.join();
  }

  const double n = static_cast<double>(n_samples);
  std::int64_t classical = 0, quantum = 0, normalized_classical = 0;
  for (Index k = 0; k < n_samples; ++k) {
    const bool c = st.pi(k) <= 1.0 + tol;
    classical += c;
    quantum += (st.gamma2(k) <= 1.0 + tol) || c;
    normalized_classical += st.ratio(k) <= 1.0 + tol;
  }
  st.frac_pi_le_1 = static_cast<double>(classical) / n;
  st.frac_gamma2_le_1 = static_cast<double>(quantum) / n;
  st.frac_normalized_classical = static_cast<double>(normalized_classical) / n;
  std::vector<double> r(st.ratio.data(), st.ratio.data() + n_samples);
  std::sort(r.begin(), r.end());
  const std::size_t h = r.size() / 2;
  st.median_ratio = r.size() % 2 ? r[h] : 0.5 * (r[h - 1] + r[h]);
  st.mean_flatness = st.flatness.mean();
  return st;
}

}  // namespace bellgeo
