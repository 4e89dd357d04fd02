#pragma once

#include "bellgeo/local_distance.hpp"
#include "bellgeo/sampler.hpp"
#include "bellgeo/scenario.hpp"

#include <Eigen/Dense>

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace bellgeo {

/// Scenario families as named on the command line.
enum class ScenarioKind { Bipartite, Multipartite, TwoTwoD, Cycle };

std::string to_string(ScenarioKind k);
/// Accepts "2m2", "N22", "22d", "cycle".
ScenarioKind parse_scenario_kind(const std::string& s);
std::string to_string(Framework f);
/// Accepts "complete", "full".
Framework parse_framework(const std::string& s);

/// Everything needed to rerun an experiment bit-for-bit.
struct ExperimentSpec {
  ScenarioKind kind = ScenarioKind::Bipartite;
  int m = 2;
  int d = 2;
  int N = 2;
  int n = 2;
  Framework framework = Framework::Complete;
  SamplingMethod method = SamplingMethod::Gibbs;
  std::int64_t n_samples = 100000;
  std::uint64_t seed = 1;
  double eps = kLocalEps;
  int bins = 100;
  double range_lo = 0.0;
  double range_hi = 0.5;
  std::optional<std::int64_t> burn_in;
  std::optional<std::int64_t> thinning;
  int chains = 1;
  std::int64_t max_draws = 0;
  /// Worker threads for NL evaluation; results do not depend on it.
  int threads = 1;

  Scenario scenario() const;
  SamplerConfig sampler() const;
  /// Throws InvalidArgument.
  void validate() const;

  /// Canonical single-line JSON (sorted keys; worker count omitted).
  std::string to_json() const;
  static ExperimentSpec from_json(const std::string& text);

  friend bool operator==(const ExperimentSpec&, const ExperimentSpec&) = default;
};

struct VolumeReport {
  ExperimentSpec spec;
  std::string scenario;
  std::int64_t n_samples = 0;
  std::int64_t local_count = 0;
  double local_fraction = 0.0;
  /// Rejection sampling only: accepted / box draws.
  std::optional<double> ns_acceptance;
  std::int64_t draws = 0;
  std::string warning;
};

struct Histogram {
  ExperimentSpec spec;
  Eigen::VectorXd edges;
  std::vector<std::int64_t> counts;
  std::int64_t total = 0;
  /// Samples with NL <= eps; not binned.
  std::int64_t local_count = 0;
  /// First bin with the largest count (-1 when every sample is local).
  int mode_bin = -1;
  /// NL values above the range are counted in the last bin.
  std::int64_t clamped = 0;
};

/// (2,2,d) run: volume, histogram and the mass close to the local boundary.
struct TwoTwoDReport {
  VolumeReport volume;
  Histogram histogram;
  double frac_nl_le_10eps = 0.0;
  double frac_nl_le_100eps = 0.0;
  std::string note;
};

/// Draws the configured samples (full-correlator coordinates for full frameworks).
SampleBatch draw_samples(const ExperimentSpec& spec);

VolumeReport run_volume(const ExperimentSpec& spec);
Histogram make_histogram(const ExperimentSpec& spec, const Eigen::VectorXd& nl);
Histogram run_histogram(const ExperimentSpec& spec);
TwoTwoDReport run_22d(const ExperimentSpec& spec);

/// One row of a reproduction table.
struct ReproRow {
  std::string label;
  double reference = 0.0;  // percent
  double computed = 0.0;  // percent
  double tolerance = 0.0; // percentage points
  std::int64_t n_samples = 0;
  bool pass = false;
};

struct ReproReport {
  std::string table;
  std::vector<ReproRow> rows;
  bool pass() const;
};

/// Scaled-down reruns of the volume tables ("I", "II", "III", "IV", "V",
/// "cycle-analytic"). `scale` multiplies the default sample counts.
ReproReport reproduce(const std::string& table, std::uint64_t seed = 1, double scale = 1.0, int threads = 1);

void print_report(std::ostream& os, const ReproReport& rep);

}  // namespace bellgeo
