#pragma once

#include "bellgeo/sampler.hpp"

#include <Eigen/Dense>

#include <cstdint>

namespace bellgeo {

/// Certified gamma_2 value: value = max(row norms of left)^2 bound, with
/// left * right = M and every row of `left` / column of `right` of norm at most
/// sqrt(upper_bound).
struct Gamma2Result {
  double value = 0.0;
  double lower_bound = 0.0;
  double upper_bound = 0.0;
  Eigen::MatrixXd left;
  Eigen::MatrixXd right;
  int newton_steps = 0;
};

struct Gamma2Options {
  /// Target width of the [lower_bound, upper_bound] bracket.
  double accuracy = 1e-9;
  int max_newton_steps = 2000;
};

constexpr std::int64_t kPiNormVertexCap = std::int64_t(1) << 17;

/// Projective norm on l_inf (x) l_inf: the gauge of conv{ u v^T : u, v sign
/// vectors }, computed by LP over all distinct sign dyads.
double pi_norm_dense(const Eigen::MatrixXd& M, std::int64_t vertex_cap = kPiNormVertexCap);

/// gamma_2 as the smallest t with [[W1, M], [M^T, W2]] PSD and diag(W) <= t,
/// solved by a log-barrier path-following Newton method.
Gamma2Result gamma2_factorization(const Eigen::MatrixXd& M, const Gamma2Options& opts = {});

template <typename Derived>
double pi_norm(const Eigen::MatrixBase<Derived>& M) {
  return pi_norm_dense(M.template cast<double>().eval());
}

template <typename Derived>
double gamma2_norm(const Eigen::MatrixBase<Derived>& M) {
  return gamma2_factorization(M.template cast<double>().eval()).value;
}

/// Entrywise sup and l1 norms.
template <typename Derived>
double entry_sup(const Eigen::MatrixBase<Derived>& M) {
  return M.size() ? static_cast<double>(M.cwiseAbs().maxCoeff()) : 0.0;
}

template <typename Derived>
double entry_l1(const Eigen::MatrixBase<Derived>& M) {
  return static_cast<double>(M.cwiseAbs().sum());
}

struct NormReport {
  double pi_norm = 0.0;
  double gamma2 = 0.0;
  double entry_sup = 0.0;
  double entry_l1 = 0.0;
  /// n^2 * entry_sup / entry_l1 (NaN for the zero matrix).
  double flatness_ratio = 0.0;
  bool is_classical = false;
  bool is_quantum = false;
};

NormReport classify(const Eigen::MatrixXd& M, double tol = 1e-6);

struct NormStats {
  int m = 0;
  std::int64_t n_samples = 0;
  double frac_pi_le_1 = 0.0;
  double frac_gamma2_le_1 = 0.0;
  /// Median of pi / gamma_2, which is also pi of the gamma_2-normalised T / gamma_2(T).
  double median_ratio = 0.0;
  double mean_flatness = 0.0;
  /// Fraction of T / gamma_2(T) that is classical (pi(T) <= gamma_2(T) + tol);
  /// every normalised matrix is quantum by construction.
  double frac_normalized_classical = 0.0;
  Eigen::VectorXd pi;
  Eigen::VectorXd gamma2;
  Eigen::VectorXd ratio;
  Eigen::VectorXd flatness;
};

/// Uniform m x m full-correlation matrices from the NS hypercube [-1,1]^(m^2)
/// (row-major), classified by both norms.
NormStats norm_experiment(int m, std::int64_t n_samples, const SamplerConfig& cfg, double tol = 1e-6,
                          int threads = 1);

}  // namespace bellgeo
