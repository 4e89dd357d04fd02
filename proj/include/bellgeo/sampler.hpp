#pragma once

#include "bellgeo/parametrization.hpp"

#include <Eigen/Dense>

#include <cstdint>
#include <optional>
#include <string>

namespace bellgeo {

enum class SamplingMethod { Gibbs, Rejection, IidBox };

std::string to_string(SamplingMethod m);
/// Accepts "gibbs", "reject"/"rejection", "iid".
SamplingMethod parse_sampling_method(const std::string& s);

struct SamplerConfig {
  std::int64_t n_samples = 1;
  std::uint64_t seed = 1;
  /// Defaults: 50 * dim coordinate steps of burn-in, dim steps between kept states.
  std::optional<std::int64_t> burn_in;
  std::optional<std::int64_t> thinning;
  SamplingMethod method = SamplingMethod::Gibbs;
  /// Independent chains (Gibbs) or draw streams; merged in chain order.
  int chains = 1;
  /// Rejection sampling gives up after this many box draws (0 = no limit).
  std::int64_t max_draws = 0;

  std::int64_t burn_in_for(Eigen::Index dim) const { return burn_in.value_or(50 * dim); }
  std::int64_t thinning_for(Eigen::Index dim) const { return thinning.value_or(dim); }
  void validate() const;
};

struct SampleBatch {
  SamplerConfig config;
  /// One sample per column.
  Eigen::MatrixXd samples;
  /// Box draws used by rejection sampling (n_samples otherwise).
  std::int64_t draws = 0;
  /// accepted / draws; 1 for the other methods.
  double acceptance_rate = 1.0;
  /// Set when rejection sampling accepts less than one draw in 10^6.
  std::string warning;
};

/// Coordinate hit-and-run: round-robin over coordinates, each redrawn
/// uniformly on the chord through the current point, starting from
/// `poly.interior`.
SampleBatch gibbs_sample(const PolytopeH& poly, const SamplerConfig& cfg);

/// i.i.d. uniform draws from the bounding box, kept when inside `poly`.
SampleBatch rejection_sample(const PolytopeH& poly, const SamplerConfig& cfg);

/// i.i.d. uniform on [-1,1]^dim.
SampleBatch iid_box_sample(Eigen::Index dim, const SamplerConfig& cfg);

/// Dispatch on cfg.method (IidBox uses the polytope's box and requires no rows).
SampleBatch sample(const PolytopeH& poly, const SamplerConfig& cfg);

}  // namespace bellgeo
