#pragma once

#include "bellgeo/experiments.hpp"
#include "bellgeo/norms.hpp"
#include "bellgeo/parametrization.hpp"
#include "bellgeo/sampler.hpp"
#include "bellgeo/scenario.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace bellgeo {

/// "scenario=<kind> m=<..> d=<..> framework=<..>" (N for N22, n for cycles).
std::string scenario_descriptor(const Scenario& sc);
/// Inverse of scenario_descriptor; unknown keys are rejected.
Scenario parse_scenario_descriptor(const std::string& line);

// Behavior: "# <descriptor>", then context_rank,outcome_rank,probability.
void write_behavior_csv(std::ostream& os, const Behavior& b);
Behavior read_behavior_csv(std::istream& is);

// Full correlators: "# <descriptor>", then context_rank,value.
void write_fullcorr_csv(std::ostream& os, const FullCorrObject& f);

// Coordinates: "# <descriptor>", then coord_index,value.
void write_coords_csv(std::ostream& os, const CoordVector& c);
CoordVector read_coords_csv(std::istream& is);

/// Sparse rows as row,col,value; then row,bound; then coord,lower,upper.
void write_polytope_csv(std::ostream& os, const PolytopeH& p);

/// "# spec=<json>", then sample_index,coord_0,...,coord_{dim-1}.
void write_samples_csv(std::ostream& os, const ExperimentSpec& spec, const Eigen::MatrixXd& samples);
/// Returns the samples (one per column) and fills `spec` from the header.
Eigen::MatrixXd read_samples_csv(std::istream& is, ExperimentSpec* spec = nullptr);

/// "# <descriptor> eps=<..> seed=<..>" and "# spec=<json>", then sample_index,nl.
void write_distance_csv(std::ostream& os, const ExperimentSpec& spec, const Eigen::VectorXd& nl);

/// "# spec=<json>", "# total=.. local_count=.. mode_bin=..", then bin,lower,upper,count.
void write_histogram_csv(std::ostream& os, const Histogram& h);

/// Header line plus one row per report:
/// scenario,size,framework,method,n_samples,local_count,local_fraction,ns_acceptance.
void write_volume_csv(std::ostream& os, const std::vector<VolumeReport>& reports);

/// m,n_samples,frac_pi_le_1,frac_gamma2_le_1,median_ratio,mean_flatness.
void write_norm_stats_csv(std::ostream& os, const std::vector<NormStats>& stats);
/// sample_index,pi,gamma2,ratio,flatness.
void write_norm_samples_csv(std::ostream& os, const NormStats& stats);

/// n,pyramid_volume,local_ratio.
void write_cycle_analytic_csv(std::ostream& os, int n_lo, int n_hi);

/// Shortest decimal that round-trips a double.
std::string format_double(double x);

}  // namespace bellgeo
