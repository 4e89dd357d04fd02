#pragma once

#include "bellgeo/errors.hpp"
#include "bellgeo/scenario.hpp"

#include <Eigen/Dense>

namespace bellgeo {

/// Full-dimensional coordinates of a nonsignalling behavior.
///
/// Correlator charts (binary bipartite, cycle): (<x_0..>, <y_0..>, <xy> per context).
/// Multipartite complete: p(-1..-1 | x_S) for every nonempty subset S and
/// setting tuple x_S, ordered by (|S|, S, x_S).
/// Probability chart (2,2,d): p(ab|00), p(ab|11) with a < d-1 and p(ab|01),
/// p(ab|10) with b < d-1, in (context, a, b) order.
/// Full-correlator frameworks: one correlator per context.
struct CoordVector {
  Scenario scenario;
  Eigen::VectorXd coords;
};

/// { z : A z <= b, lower <= z <= upper }. A may have zero rows.
struct PolytopeH {
  Eigen::MatrixXd A;
  Eigen::VectorXd b;
  Eigen::VectorXd lower;
  Eigen::VectorXd upper;
  /// A strictly interior point (the uniform behavior for NS polytopes).
  Eigen::VectorXd interior;

  Eigen::Index dim() const { return lower.size(); }
  bool contains(const Eigen::Ref<const Eigen::VectorXd>& z, double tol = kExactTolerance) const;
  /// Largest violation of any row or box bound (0 when inside).
  double violation(const Eigen::Ref<const Eigen::VectorXd>& z) const;
};

/// The coordinate map as matrices: table = offset + map * z, z = extract * table.
/// For full-correlator frameworks the table is the zero-marginal behavior
/// with the given correlators.
struct AffineChart {
  Eigen::VectorXd offset;
  Eigen::MatrixXd map;
  Eigen::MatrixXd extract;
};

class InvalidBehavior : public InvalidArgument {
 public:
  InvalidBehavior(const std::string& what, ValidationReport report)
      : InvalidArgument(what), report_(std::move(report)) {}
  const ValidationReport& report() const { return report_; }

 private:
  ValidationReport report_;
};

/// Raised by from_coords when the reconstructed table has a negative entry.
class InfeasiblePoint : public Error {
 public:
  InfeasiblePoint(const std::string& what, double min_probability, Eigen::Index entry)
      : Error(what), min_probability_(min_probability), entry_(entry) {}
  double min_probability() const { return min_probability_; }
  Eigen::Index entry() const { return entry_; }

 private:
  double min_probability_;
  Eigen::Index entry_;
};

Eigen::Index dimension(const Scenario& sc);

AffineChart affine_chart(const Scenario& sc);

/// Requires b to pass validation at 1e-10; throws InvalidBehavior otherwise.
CoordVector to_coords(const Behavior& b);

/// Throws InfeasiblePoint when any reconstructed probability is below -tol.
Behavior from_coords(const CoordVector& c, double tol = kExactTolerance);

/// offset + map * z without the feasibility check.
Eigen::VectorXd reconstruct_table(const AffineChart& chart, const Eigen::Ref<const Eigen::VectorXd>& z);

PolytopeH ns_inequalities(const Scenario& sc);

}  // namespace bellgeo
