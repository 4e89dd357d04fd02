#pragma once

#include "bellgeo/lp.hpp"
#include "bellgeo/parametrization.hpp"
#include "bellgeo/scenario.hpp"

#include <Eigen/Dense>

#include <optional>
#include <vector>

namespace bellgeo {

/// Images of the deterministic local strategies: the V-representation of the
/// local polytope. Full-correlator frameworks keep only distinct sign patterns.
struct VertexBasis {
  Scenario scenario;
  /// Coordinate-space vertices, one per column.
  Eigen::MatrixXd columns;
  /// Same vertices in the space where the distance is measured: the
  /// probability table (complete) or the correlator vector (full).
  Eigen::MatrixXd distance_columns;
  /// 1 / (2 * #contexts) for complete tables, 1 / (2 * #correlators) otherwise.
  double normalization = 0.0;

  Eigen::Index size() const { return columns.cols(); }
};

struct DistanceResult {
  double nl = 0.0;
  /// Convex weights over the basis columns.
  Eigen::VectorXd weights;
  /// Closest local point, in coordinates.
  Eigen::VectorXd closest_point;
  LPStatus status = LPStatus::NumericalFailure;
  /// Dual functional y in [-1,1]^E with L1 distance = y.p - max_k y.v_k.
  Eigen::VectorXd functional;
};

constexpr double kLocalEps = 1e-10;

VertexBasis local_vertex_basis(const Scenario& sc, std::int64_t cap = kDefaultStrategyCap);

/// Coordinates mapped to the distance space of the basis. Throws
/// InfeasiblePoint when the coordinates leave the NS polytope by more than 1e-10.
Eigen::VectorXd distance_space_point(const VertexBasis& basis, const Eigen::Ref<const Eigen::VectorXd>& coords);

/// Trace-distance quantifier: (1/2K) min_{lambda in simplex} || p(q) - D lambda ||_1.
/// Throws NumericalFailure if the LP cannot be certified.
DistanceResult nl_distance(const CoordVector& q, const VertexBasis& basis);

bool is_local(const CoordVector& q, const VertexBasis& basis, double eps = kLocalEps);

/// Locality classifier that caches separating functionals from previous LP
/// duals. Any y in [-1,1]^E gives NL(q) >= (y.p - max_k y.v_k) / (2K), so a
/// cached functional that already exceeds eps decides "nonlocal" without an
/// LP. Complete frameworks then solve the smaller L1 program in coordinates,
/// whose weights bound NL from above and whose duals bound it from below;
/// only undecided points get the full LP. Not thread-safe; use one per thread.
class LocalityOracle {
 public:
  explicit LocalityOracle(const VertexBasis& basis, Eigen::Index capacity = 2048);

  /// Best certified lower bound on NL from the cache (may be negative).
  double lower_bound(const Eigen::Ref<const Eigen::VectorXd>& point) const;

  bool is_local(const Eigen::Ref<const Eigen::VectorXd>& coords, double eps = kLocalEps);
  DistanceResult distance(const Eigen::Ref<const Eigen::VectorXd>& coords);

  std::size_t lp_solves() const { return lp_solves_; }
  Eigen::Index cached() const { return used_; }

 private:
  void remember(const Eigen::VectorXd& functional);

  const VertexBasis& basis_;
  Eigen::MatrixXd functionals_;  // one functional per row
  Eigen::VectorXd offsets_;      // max_k y.v_k per row
  std::vector<std::size_t> hits_;
  Eigen::Index used_ = 0;
  std::size_t lp_solves_ = 0;
  DualWarmStart solver_;
  std::optional<DualWarmStart> coord_solver_;
  Eigen::MatrixXd extract_;
};

/// Locality flags for every column of `samples`, evaluated in contiguous blocks
/// with one oracle per worker. Result does not depend on `threads`.
std::vector<char> classify_samples(const Eigen::MatrixXd& samples, const VertexBasis& basis, double eps,
                                   int threads = 1);

/// NL for every column of `samples`.
Eigen::VectorXd nl_samples(const Eigen::MatrixXd& samples, const VertexBasis& basis, int threads = 1);

}  // namespace bellgeo
