#include "bellgeo/sampler.hpp"

#include "bellgeo/errors.hpp"
#include "bellgeo/rng.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <vector>

namespace bellgeo {

namespace {

using Eigen::Index;
using Eigen::MatrixXd;
using Eigen::VectorXd;
using RowMajorMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

std::int64_t chain_share(std::int64_t n, int chains, int c) {
  return n / chains + (c < n % chains ? 1 : 0);
}

struct SparseColumn {
  std::vector<Index> rows;
  std::vector<double> values;
};

class GibbsChain {
 public:
  GibbsChain(const PolytopeH& poly, std::uint64_t seed, int chain)
      : poly_(poly), rng_(seed, static_cast<std::uint64_t>(chain)), z_(poly.interior) {
    const Index dim = poly.dim();
    cols_.resize(static_cast<std::size_t>(dim));
    for (Index j = 0; j < dim; ++j)
      for (Index r = 0; r < poly.A.rows(); ++r)
        if (poly.A(r, j) != 0.0) {
          cols_[static_cast<std::size_t>(j)].rows.push_back(r);
          cols_[static_cast<std::size_t>(j)].values.push_back(poly.A(r, j));
        }
    refresh();
    if (poly.A.rows() > 0 && slack_.minCoeff() < 0.0)
      throw InvalidArgument("Gibbs starting point lies outside the polytope");
  }

  void step() {
    const Index dim = poly_.dim();
    const Index i = static_cast<Index>(step_ % dim);
    double lo = poly_.lower(i) - z_(i);
    double hi = poly_.upper(i) - z_(i);
    const SparseColumn& col = cols_[static_cast<std::size_t>(i)];
    for (std::size_t k = 0; k < col.rows.size(); ++k) {
      const double a = col.values[k];
      const double bound = slack_(col.rows[k]) / a;
      if (a > 0.0) hi = std::min(hi, bound);
      else lo = std::max(lo, bound);
    }
    if (hi - lo < -1e-9) {
      std::ostringstream os;
      os << "empty chord at coordinate " << i << " (length " << hi - lo << ")";
      throw NumericalFailure(os.str());
    }
    double t = 0.0;
    if (hi > lo) t = lo + (hi - lo) * rng_.uniform();
    z_(i) += t;
    for (std::size_t k = 0; k < col.rows.size(); ++k) slack_(col.rows[k]) -= col.values[k] * t;
    ++step_;
    if (step_ % (64 * dim) == 0) refresh();
  }

  const VectorXd& state() const { return z_; }

 private:
  void refresh() {
    if (poly_.A.rows() > 0) slack_ = poly_.b - poly_.A * z_;
    else slack_.resize(0);
  }

  const PolytopeH& poly_;
  Rng rng_;
  VectorXd z_;
  VectorXd slack_;
  std::vector<SparseColumn> cols_;
  std::int64_t step_ = 0;
};

}  // namespace

std::string to_string(SamplingMethod m) {
  switch (m) {
    case SamplingMethod::Gibbs: return "gibbs";
    case SamplingMethod::Rejection: return "reject";
    case SamplingMethod::IidBox: return "iid";
  }
  return "unknown";
}

SamplingMethod parse_sampling_method(const std::string& s) {
  if (s == "gibbs") return SamplingMethod::Gibbs;
  if (s == "reject" || s == "rejection") return SamplingMethod::Rejection;
  if (s == "iid") return SamplingMethod::IidBox;
  throw InvalidArgument("unknown sampling method '" + s + "'");
}

void SamplerConfig::validate() const {
  if (n_samples < 1) throw InvalidArgument("n_samples must be >= 1");
  if (burn_in && *burn_in < 0) throw InvalidArgument("burn_in must be >= 0");
  if (thinning && *thinning < 0) throw InvalidArgument("thinning must be >= 0");
  if (chains < 1) throw InvalidArgument("chains must be >= 1");
  if (max_draws < 0) throw InvalidArgument("max_draws must be >= 0");
}

SampleBatch gibbs_sample(const PolytopeH& poly, const SamplerConfig& cfg) {
  cfg.validate();
  const Index dim = poly.dim();
  if (dim < 1) throw InvalidArgument("polytope has no coordinates");
  if (poly.interior.size() != dim || poly.upper.size() != dim || poly.A.cols() != dim)
    throw InvalidArgument("polytope dimension mismatch");
  SampleBatch batch{cfg, MatrixXd(dim, cfg.n_samples), cfg.n_samples, 1.0, {}};
  const std::int64_t burn = cfg.burn_in_for(dim);
  const std::int64_t thin = std::max<std::int64_t>(1, cfg.thinning_for(dim));
  Index out = 0;
  for (int c = 0; c < cfg.chains; ++c) {
    GibbsChain chain(poly, cfg.seed, c);
    for (std::int64_t s = 0; s < burn; ++s) chain.step();
    const std::int64_t share = chain_share(cfg.n_samples, cfg.chains, c);
    for (std::int64_t k = 0; k < share; ++k) {
      for (std::int64_t s = 0; s < thin; ++s) chain.step();
      batch.samples.col(out++) = chain.state();
    }
  }
  return batch;
}

SampleBatch rejection_sample(const PolytopeH& poly, const SamplerConfig& cfg) {
  cfg.validate();
  const Index dim = poly.dim();
  if (dim < 1) throw InvalidArgument("polytope has no coordinates");
  if (!poly.lower.allFinite() || !poly.upper.allFinite())
    throw InvalidArgument("rejection sampling needs a bounded box");
  const RowMajorMatrix A = poly.A;
  SampleBatch batch{cfg, MatrixXd(dim, cfg.n_samples), 0, 0.0, {}};
  Index accepted = 0;
  VectorXd z(dim);
  bool exhausted = false;
  for (int c = 0; c < cfg.chains && !exhausted; ++c) {
    Rng rng(cfg.seed, static_cast<std::uint64_t>(c));
    const std::int64_t share = chain_share(cfg.n_samples, cfg.chains, c);
    std::int64_t got = 0;
    while (got < share) {
      if (cfg.max_draws > 0 && batch.draws >= cfg.max_draws) {
        exhausted = true;
        break;
      }
      for (Index i = 0; i < dim; ++i) z(i) = rng.uniform(poly.lower(i), poly.upper(i));
      ++batch.draws;
      bool inside = true;
      for (Index r = 0; r < A.rows() && inside; ++r) inside = A.row(r).dot(z) <= poly.b(r);
      if (inside) {
        batch.samples.col(accepted++) = z;
        ++got;
      }
    }
  }
  if (accepted < cfg.n_samples) {
    batch.samples.conservativeResize(dim, accepted);
    std::ostringstream os;
    os << "rejection sampling stopped after " << batch.draws << " draws with " << accepted << " accepted";
    batch.warning = os.str();
  }
  batch.acceptance_rate = batch.draws > 0 ? static_cast<double>(accepted) / static_cast<double>(batch.draws) : 0.0;
  if (batch.warning.empty() && batch.acceptance_rate < 1e-6) {
    std::ostringstream os;
    os << "acceptance rate " << batch.acceptance_rate << " is below 1e-6";
    batch.warning = os.str();
  }
  return batch;
}

SampleBatch iid_box_sample(Index dim, const SamplerConfig& cfg) {
  cfg.validate();
  if (dim < 1) throw InvalidArgument("iid box sampling needs dim >= 1");
  SampleBatch batch{cfg, MatrixXd(dim, cfg.n_samples), cfg.n_samples, 1.0, {}};
  Index out = 0;
  for (int c = 0; c < cfg.chains; ++c) {
    Rng rng(cfg.seed, static_cast<std::uint64_t>(c));
    const std::int64_t share = chain_share(cfg.n_samples, cfg.chains, c);
    for (std::int64_t k = 0; k < share; ++k, ++out)
      for (Index i = 0; i < dim; ++i) batch.samples(i, out) = rng.uniform(-1.0, 1.0);
  }
  return batch;
}

SampleBatch sample(const PolytopeH& poly, const SamplerConfig& cfg) {
  switch (cfg.method) {
    case SamplingMethod::Gibbs: return gibbs_sample(poly, cfg);
    case SamplingMethod::Rejection: return rejection_sample(poly, cfg);
    case SamplingMethod::IidBox:
      if (poly.A.rows() > 0) throw InvalidArgument("iid sampling is only exact on a pure box (full correlators)");
      return iid_box_sample(poly.dim(), cfg);
  }
  throw InvalidArgument("unknown sampling method");
}

}  // namespace bellgeo
