#include "bellgeo/parametrization.hpp"
#include "bellgeo/rng.hpp"

#include "support.hpp"

#include <doctest.h>

using namespace bellgeo;

namespace {

std::vector<Scenario> complete_families() {
  return {Scenario::bipartite(2), Scenario::bipartite(3),  Scenario::two_two_d(2), Scenario::two_two_d(3),
          Scenario::multipartite(3), Scenario::cycle(3), Scenario::cycle(4)};
}

}  // namespace

TEST_CASE("dimensions") {
  CHECK(dimension(Scenario::bipartite(2)) == 8);
  CHECK(dimension(Scenario::two_two_d(3)) == 24);
  CHECK(dimension(Scenario::two_two_d(4)) == 48);
  CHECK(dimension(Scenario::multipartite(3)) == 26);
  CHECK(dimension(Scenario::cycle(4)) == 16);
  CHECK(dimension(Scenario::bipartite(3, 2, Framework::FullCorrelators)) == 9);
  CHECK(dimension(Scenario::cycle(3, Framework::FullCorrelators)) == 6);
  CHECK(dimension(Scenario::multipartite(4, Framework::FullCorrelators)) == 16);
}

TEST_CASE("uniform and PR coordinates") {
  const Scenario sc = Scenario::bipartite(2);
  CHECK(to_coords(uniform_behavior(sc)).coords.isZero(1e-15));
  Eigen::VectorXd pr(8);
  pr << 0, 0, 0, 0, 1, 1, 1, -1;
  CHECK(to_coords(pr_box(sc)).coords.isApprox(pr, 1e-15));
  CHECK(from_coords({sc, pr}).table.isApprox(pr_box(sc).table, 1e-15));
  for (const auto& fam : complete_families()) {
    const Eigen::VectorXd z = to_coords(uniform_behavior(fam)).coords;
    if (fam.chart() == Chart::Correlator && fam.family() != Family::Multipartite) CHECK(z.isZero(1e-15));
    CHECK((from_coords({fam, z}).table - uniform_behavior(fam).table).cwiseAbs().maxCoeff() < 1e-15);
    CHECK(ns_inequalities(fam).interior.isApprox(z, 1e-15));
  }
}

TEST_CASE("infeasible reconstruction reports the negative entry") {
  const Scenario sc = Scenario::bipartite(2);
  Eigen::VectorXd z = Eigen::VectorXd::Zero(8);
  z(0) = 1.0;
  z(4) = -1.0;
  try {
    from_coords({sc, z});
    FAIL("expected InfeasiblePoint");
  } catch (const InfeasiblePoint& e) {
    CHECK(e.min_probability() == doctest::Approx(-0.25));
    // p(1,1|0,0) is the fourth entry of the first context
    CHECK(e.entry() == 3);
  }
}

TEST_CASE("to_coords rejects invalid behaviors") {
  Behavior b = uniform_behavior(Scenario::bipartite(2));
  b.table(0) += 0.01;
  CHECK_THROWS_AS(to_coords(b), InvalidBehavior);
  CHECK_THROWS_AS(from_coords({Scenario::bipartite(2), Eigen::VectorXd::Zero(7)}), InvalidArgument);
}

TEST_CASE("round trip of random local mixtures") {
  Rng rng(7);
  for (const auto& sc : complete_families()) {
    for (int k = 0; k < 200; ++k) {
      const Behavior b = testing::random_local_mixture(sc, rng);
      const Behavior back = from_coords(to_coords(b));
      CHECK((back.table - b.table).cwiseAbs().maxCoeff() <= 1e-10);
    }
  }
}

TEST_CASE("coordinate map is affine") {
  Rng rng(8);
  for (const auto& sc : complete_families()) {
    for (int k = 0; k < 20; ++k) {
      const Behavior b1 = testing::random_local_mixture(sc, rng);
      const Behavior b2 = testing::random_local_mixture(sc, rng);
      const double lam = rng.uniform();
      const Behavior mix{sc, lam * b1.table + (1 - lam) * b2.table};
      const Eigen::VectorXd expected = lam * to_coords(b1).coords + (1 - lam) * to_coords(b2).coords;
      CHECK((to_coords(mix).coords - expected).cwiseAbs().maxCoeff() <= 1e-12);
    }
  }
}

TEST_CASE("membership equivalence on random box points") {
  Rng rng(9);
  for (const auto& sc : complete_families()) {
    const PolytopeH poly = ns_inequalities(sc);
    int inside = 0;
    for (int k = 0; k < 10000; ++k) {
      Eigen::VectorXd z(poly.dim());
      for (Eigen::Index i = 0; i < z.size(); ++i) z(i) = rng.uniform(poly.lower(i), poly.upper(i));
      // Plain box points are almost never inside in high dimension, so pull
      // half of them toward the interior point.
      if (k % 2) z = poly.interior + rng.uniform() * (z - poly.interior);
      bool reconstructs = true;
      try {
        from_coords({sc, z});
      } catch (const InfeasiblePoint&) {
        reconstructs = false;
      }
      CHECK(reconstructs == poly.contains(z));
      inside += reconstructs;
    }
    CHECK(inside > 0);
  }
}

TEST_CASE("polytope shapes") {
  const PolytopeH c2 = ns_inequalities(Scenario::cycle(2));
  CHECK(c2.dim() == 8);
  CHECK(c2.A.rows() == 16);
  CHECK((c2.lower.array() == -1.0).all());
  CHECK((c2.upper.array() == 1.0).all());

  const PolytopeH full = ns_inequalities(Scenario::bipartite(3, 2, Framework::FullCorrelators));
  CHECK(full.dim() == 9);
  CHECK(full.A.rows() == 0);

  for (const auto& sc : complete_families()) {
    const PolytopeH poly = ns_inequalities(sc);
    CHECK(poly.A.allFinite());
    CHECK(poly.b.allFinite());
    // strict interior
    CHECK((poly.b - poly.A * poly.interior).minCoeff() > 1e-6);
    CHECK(poly.violation(poly.interior) == 0.0);
  }
}

TEST_CASE("probability chart reduces to the correlator chart at d = 2") {
  Rng rng(10);
  const Scenario corr = Scenario::bipartite(2);
  const Scenario prob = Scenario::two_two_d(2);
  for (int k = 0; k < 50; ++k) {
    const Behavior b = testing::random_local_mixture(corr, rng);
    const Behavior bp{prob, b.table};
    CHECK((from_coords(to_coords(bp)).table - b.table).cwiseAbs().maxCoeff() <= 1e-12);
  }
}
