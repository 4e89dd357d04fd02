#include "bellgeo/local_distance.hpp"

#include "bellgeo/errors.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <thread>

namespace bellgeo {

namespace {

using Eigen::Index;
using Eigen::MatrixXd;
using Eigen::VectorXd;

// Variables: lambda (K), r+ (E), r- (E). Rows: D lambda + r+ - r- = p, 1^T lambda = 1.
LinearProgram distance_lp(const VertexBasis& basis) {
  const Index E = basis.distance_columns.rows();
  const Index K = basis.size();
  LinearProgram lp;
  lp.objective = VectorXd::Zero(K + 2 * E);
  lp.objective.tail(2 * E).setOnes();
  lp.eq_matrix = MatrixXd::Zero(E + 1, K + 2 * E);
  lp.eq_matrix.topLeftCorner(E, K) = basis.distance_columns;
  lp.eq_matrix.block(0, K, E, E).setIdentity();
  lp.eq_matrix.block(0, K + E, E, E) = -MatrixXd::Identity(E, E);
  lp.eq_matrix.row(E).head(K).setOnes();
  lp.eq_rhs = VectorXd::Zero(E + 1);
  lp.eq_rhs(E) = 1.0;
  return lp;
}

VectorXd distance_rhs(const VectorXd& point) {
  VectorXd rhs(point.size() + 1);
  rhs.head(point.size()) = point;
  rhs(point.size()) = 1.0;
  return rhs;
}

DistanceResult finish_distance(const LPSolution& sol, const VertexBasis& basis, const VectorXd& point) {
  const Index E = basis.distance_columns.rows();
  const Index K = basis.size();
  DistanceResult res;
  res.status = sol.status;
  if (sol.status != LPStatus::Optimal) {
    std::ostringstream os;
    os << "distance LP for " << basis.scenario.label() << " ended with status " << to_string(sol.status);
    throw NumericalFailure(os.str());
  }
  res.weights = sol.x.head(K).cwiseMax(0.0);
  res.weights /= res.weights.sum();
  res.closest_point = basis.columns * res.weights;
  const VectorXd residual = point - basis.distance_columns * res.weights;
  res.nl = residual.lpNorm<1>() * basis.normalization;
  res.functional = sol.eq_duals.head(E).cwiseMax(-1.0).cwiseMin(1.0);
  return res;
}

DualWarmStart warm_solver(const VertexBasis& basis) {
  LinearProgram lp = distance_lp(basis);
  return DualWarmStart(std::move(lp.eq_matrix), std::move(lp.objective));
}

}  // namespace

VertexBasis local_vertex_basis(const Scenario& sc, std::int64_t cap) {
  const auto strategies = enumerate_strategies(sc, cap);
  VertexBasis basis{sc, {}, {}, 0.0};
  const Index K = static_cast<Index>(strategies.size());
  const Scenario complete = sc.with_framework(Framework::Complete);
  if (!sc.full_correlators()) {
    const AffineChart ch = affine_chart(sc);
    basis.distance_columns.resize(sc.table_size(), K);
    for (Index k = 0; k < K; ++k)
      basis.distance_columns.col(k) = strategy_behavior(strategies[static_cast<std::size_t>(k)], sc).table;
    basis.columns = ch.extract * basis.distance_columns;
    basis.normalization = 1.0 / (2.0 * static_cast<double>(sc.context_count()));
    return basis;
  }
  std::map<std::vector<int>, Index> seen;
  std::vector<VectorXd> cols;
  for (const auto& s : strategies) {
    const VectorXd corr = full_correlators(strategy_behavior(s, complete)).values;
    std::vector<int> key(static_cast<std::size_t>(corr.size()));
    for (Index i = 0; i < corr.size(); ++i) key[static_cast<std::size_t>(i)] = corr(i) > 0 ? 1 : -1;
    if (seen.emplace(key, static_cast<Index>(cols.size())).second) cols.push_back(corr);
  }
  basis.columns.resize(sc.context_count(), static_cast<Index>(cols.size()));
  for (std::size_t k = 0; k < cols.size(); ++k) basis.columns.col(static_cast<Index>(k)) = cols[k];
  basis.distance_columns = basis.columns;
  basis.normalization = 1.0 / (2.0 * static_cast<double>(sc.context_count()));
  return basis;
}

VectorXd distance_space_point(const VertexBasis& basis, const Eigen::Ref<const VectorXd>& coords) {
  const Scenario& sc = basis.scenario;
  if (coords.size() != dimension(sc)) throw InvalidArgument("query has wrong dimension");
  if (sc.full_correlators()) {
    const double worst = coords.cwiseAbs().maxCoeff();
    if (worst > 1.0 + kCliTolerance) {
      std::ostringstream os;
      os << "correlator " << worst << " lies outside [-1,1]";
      throw InfeasiblePoint(os.str(), 1.0 - worst, 0);
    }
    return coords;
  }
  return from_coords(CoordVector{sc, coords}, kCliTolerance).table;
}

DistanceResult nl_distance(const CoordVector& q, const VertexBasis& basis) {
  if (!(q.scenario == basis.scenario)) throw InvalidArgument("query and basis belong to different scenarios");
  const VectorXd point = distance_space_point(basis, q.coords);
  LinearProgram lp = distance_lp(basis);
  lp.eq_rhs = distance_rhs(point);
  return finish_distance(solve(lp), basis, point);
}

bool is_local(const CoordVector& q, const VertexBasis& basis, double eps) {
  return nl_distance(q, basis).nl <= eps;
}

LocalityOracle::LocalityOracle(const VertexBasis& basis, Index capacity)
    : basis_(basis),
      functionals_(capacity, basis.distance_columns.rows()),
      offsets_(capacity),
      hits_(static_cast<std::size_t>(capacity), 0),
      solver_(warm_solver(basis)) {
  if (!basis.scenario.full_correlators()) {
    // Same L1 program in coordinates: far fewer rows, same zero set.
    const Index dim = basis.columns.rows();
    const Index K = basis.size();
    MatrixXd A = MatrixXd::Zero(dim + 1, K + 2 * dim);
    A.topLeftCorner(dim, K) = basis.columns;
    A.block(0, K, dim, dim).setIdentity();
    A.block(0, K + dim, dim, dim) = -MatrixXd::Identity(dim, dim);
    A.row(dim).head(K).setOnes();
    VectorXd c = VectorXd::Zero(K + 2 * dim);
    c.tail(2 * dim).setOnes();
    coord_solver_.emplace(std::move(A), std::move(c));
    extract_ = affine_chart(basis.scenario).extract;
  }
}

double LocalityOracle::lower_bound(const Eigen::Ref<const VectorXd>& point) const {
  if (used_ == 0) return -1.0;
  const VectorXd gaps = functionals_.topRows(used_) * point - offsets_.head(used_);
  return gaps.maxCoeff() * basis_.normalization;
}

bool LocalityOracle::is_local(const Eigen::Ref<const VectorXd>& coords, double eps) {
  const VectorXd point = distance_space_point(basis_, coords);
  if (used_ > 0) {
    const VectorXd gaps = functionals_.topRows(used_) * point - offsets_.head(used_);
    Index best = 0;
    if (gaps.maxCoeff(&best) * basis_.normalization > eps) {
      ++hits_[static_cast<std::size_t>(best)];
      return false;
    }
  }
  if (coord_solver_) {
    const Index dim = coords.size();
    const Index K = basis_.size();
    VectorXd rhs(dim + 1);
    rhs << coords, 1.0;
    const LPSolution sol = coord_solver_->solve(rhs);
    if (sol.status == LPStatus::Optimal) {
      // A local point within eps of the query certifies NL <= eps.
      VectorXd w = sol.x.head(K).cwiseMax(0.0);
      w /= w.sum();
      if ((point - basis_.distance_columns * w).lpNorm<1>() * basis_.normalization <= eps) return true;
      // The coordinate duals pulled back to tables separate the query.
      VectorXd f = extract_.transpose() * sol.eq_duals.head(dim);
      const double scale = f.cwiseAbs().maxCoeff();
      if (scale > 0.0) {
        f /= scale;
        const double gap = f.dot(point) - (f.transpose() * basis_.distance_columns).maxCoeff();
        if (gap * basis_.normalization > eps) {
          remember(f);
          return false;
        }
      }
    }
  }
  const DistanceResult res = distance(coords);
  return res.nl <= eps;
}

DistanceResult LocalityOracle::distance(const Eigen::Ref<const VectorXd>& coords) {
  const VectorXd point = distance_space_point(basis_, coords);
  DistanceResult res = finish_distance(solver_.solve(distance_rhs(point)), basis_, point);
  ++lp_solves_;
  if (res.nl > kLocalEps) remember(res.functional);
  return res;
}

void LocalityOracle::remember(const VectorXd& functional) {
  const Index cap = functionals_.rows();
  if (cap == 0) return;
  Index slot = used_;
  if (used_ == cap) {
    slot = static_cast<Index>(std::min_element(hits_.begin(), hits_.end()) - hits_.begin());
  } else {
    ++used_;
  }
  functionals_.row(slot) = functional.transpose();
  offsets_(slot) = (functional.transpose() * basis_.distance_columns).maxCoeff();
  hits_[static_cast<std::size_t>(slot)] = 1;
}

namespace {

template <typename Fn>
void for_blocks(Index n, int threads, Fn&& fn) {
  threads = std::max(1, std::min<int>(threads, static_cast<int>(std::max<Index>(n, 1))));
  if (threads == 1) {
    fn(Index{0}, n);
    return;
  }
  std::vector<std::thread> pool;
  const Index chunk = (n + threads - 1) / threads;
  for (int t = 0; t < threads; ++t) {
    const Index lo = std::min(n, t * chunk);
    const Index hi = std::min(n, lo + chunk);
    pool.emplace_back([&fn, lo, hi] { fn(lo, hi); });
  }
  for (auto& th : pool) th.join();
}

}  // namespace

std::vector<char> classify_samples(const MatrixXd& samples, const VertexBasis& basis, double eps, int threads) {
  std::vector<char> out(static_cast<std::size_t>(samples.cols()), 0);
  for_blocks(samples.cols(), threads, [&](Index lo, Index hi) {
    LocalityOracle oracle(basis);
    for (Index i = lo; i < hi; ++i) out[static_cast<std::size_t>(i)] = oracle.is_local(samples.col(i), eps) ? 1 : 0;
  });
  return out;
}

VectorXd nl_samples(const MatrixXd& samples, const VertexBasis& basis, int threads) {
  VectorXd out(samples.cols());
  for_blocks(samples.cols(), threads, [&](Index lo, Index hi) {
    DualWarmStart solver = warm_solver(basis);
    for (Index i = lo; i < hi; ++i) {
      const VectorXd point = distance_space_point(basis, samples.col(i));
      out(i) = finish_distance(solver.solve(distance_rhs(point)), basis, point).nl;
    }
  });
  return out;
}

}  // namespace bellgeo
