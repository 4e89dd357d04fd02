#pragma once

#include "bellgeo/rng.hpp"
#include "bellgeo/scenario.hpp"

#include <Eigen/Dense>

#include <vector>

namespace testing {

// Random convex combination of `terms` deterministic strategies.
inline bellgeo::Behavior random_local_mixture(const bellgeo::Scenario& sc, bellgeo::Rng& rng, int terms = 5) {
  const auto strategies = bellgeo::enumerate_strategies(sc);
  bellgeo::Behavior out{sc, Eigen::VectorXd::Zero(sc.table_size())};
  double total = 0.0;
  for (int t = 0; t < terms; ++t) {
    const double w = rng.uniform() + 1e-3;
    const auto& s = strategies[rng.next() % strategies.size()];
    out.table += w * bellgeo::strategy_behavior(s, sc).table;
    total += w;
  }
  out.table /= total;
  return out;
}

inline Eigen::MatrixXd random_matrix(int rows, int cols, bellgeo::Rng& rng) {
  Eigen::MatrixXd M(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) M(i, j) = rng.uniform(-1.0, 1.0);
  return M;
}

}  // namespace testing
