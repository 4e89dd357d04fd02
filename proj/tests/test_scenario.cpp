#include "bellgeo/errors.hpp"
#include "bellgeo/scenario.hpp"

#include <doctest.h>

#include <algorithm>
#include <set>

using namespace bellgeo;

TEST_CASE("scenario construction rejects bad sizes") {
  CHECK_THROWS_AS(Scenario::bipartite(1), InvalidArgument);
  CHECK_THROWS_AS(Scenario::bipartite(2, 1), InvalidArgument);
  CHECK_THROWS_AS(Scenario::multipartite(1), InvalidArgument);
  CHECK_THROWS_AS(Scenario::cycle(1), InvalidArgument);
  CHECK_THROWS_AS(Scenario::bipartite(2, 3, Framework::FullCorrelators), InvalidArgument);
  CHECK_THROWS_AS(Scenario::bipartite(3, 3), InvalidArgument);
}

TEST_CASE("context counts per family") {
  CHECK(Scenario::bipartite(3).context_count() == 9);
  CHECK(Scenario::multipartite(3).context_count() == 8);
  CHECK(Scenario::cycle(5).context_count() == 10);
  CHECK(Scenario::two_two_d(4).context_count() == 4);
}

TEST_CASE("bipartite contexts are lexicographic") {
  const auto ctxs = enumerate_contexts(Scenario::bipartite(2));
  REQUIRE(ctxs.size() == 4);
  CHECK(ctxs[0].settings == std::vector<int>{0, 0});
  CHECK(ctxs[1].settings == std::vector<int>{0, 1});
  CHECK(ctxs[2].settings == std::vector<int>{1, 0});
  CHECK(ctxs[3].settings == std::vector<int>{1, 1});
  for (std::size_t i = 0; i < ctxs.size(); ++i)
    CHECK(context_rank(Scenario::bipartite(2), ctxs[i]) == static_cast<std::int64_t>(i));
}

TEST_CASE("cycle contexts are the adjacent pairs") {
  const auto c2 = enumerate_contexts(Scenario::cycle(2));
  const auto b2 = enumerate_contexts(Scenario::bipartite(2));
  CHECK(std::set<Context>(c2.begin(), c2.end()) == std::set<Context>(b2.begin(), b2.end()));

  const Scenario c4 = Scenario::cycle(4);
  const auto ctxs = enumerate_contexts(c4);
  REQUIRE(ctxs.size() == 8);
  CHECK(std::is_sorted(ctxs.begin(), ctxs.end()));
  for (int i = 0; i < 4; ++i) {
    CHECK(std::count(ctxs.begin(), ctxs.end(), Context{{i, i}}) == 1);
    CHECK(std::count(ctxs.begin(), ctxs.end(), Context{{(i + 1) % 4, i}}) == 1);
  }
  CHECK_THROWS_AS(context_rank(c4, Context{{0, 2}}), InvalidArgument);
}

TEST_CASE("multipartite has 2^N contexts") {
  CHECK(enumerate_contexts(Scenario::multipartite(3)).size() == 8);
}

TEST_CASE("strategy counts") {
  CHECK(enumerate_strategies(Scenario::bipartite(2)).size() == 16);
  CHECK(enumerate_strategies(Scenario::bipartite(2, 3)).size() == 81);
  CHECK(enumerate_strategies(Scenario::cycle(3)).size() == 64);
  CHECK(enumerate_strategies(Scenario::multipartite(3)).size() == 64);
}

TEST_CASE("strategy count formula holds exhaustively up to 1e4") {
  const std::vector<Scenario> all = {Scenario::bipartite(2),      Scenario::bipartite(3),
                                     Scenario::bipartite(4),      Scenario::bipartite(5),
                                     Scenario::bipartite(2, 3),   Scenario::bipartite(2, 4),
                                     Scenario::multipartite(2),   Scenario::multipartite(3),
                                     Scenario::multipartite(4),   Scenario::cycle(2),
                                     Scenario::cycle(3),          Scenario::cycle(4),
                                     Scenario::cycle(5),          Scenario::cycle(6)};
  for (const auto& sc : all) {
    if (strategy_count(sc) > 1e4) continue;
    const auto s = enumerate_strategies(sc);
    CHECK(static_cast<long double>(s.size()) == strategy_count(sc));
    std::set<std::vector<int>> distinct;
    for (const auto& x : s) distinct.insert(x.responses());
    CHECK(distinct.size() == s.size());
  }
}

TEST_CASE("strategy cap names the required count") {
  try {
    enumerate_strategies(Scenario::bipartite(5), 100);
    FAIL("expected CapExceeded");
  } catch (const CapExceeded& e) {
    CHECK(e.required() == doctest::Approx(1024.0));
  }
}

TEST_CASE("deterministic behaviors") {
  const Scenario sc = Scenario::bipartite(2);
  const auto s = enumerate_strategies(sc);
  const Behavior zero = strategy_behavior(s.front(), sc);
  for (int c = 0; c < 4; ++c) CHECK(zero(c, 0) == 1.0);

  // a(x) = x, b(y) = 0
  const DeterministicStrategy ax(2, 2, {0, 1, 0, 0});
  const Behavior b = strategy_behavior(ax, sc);
  const auto ctxs = enumerate_contexts(sc);
  for (std::size_t c = 0; c < ctxs.size(); ++c) {
    const int expected = outcome_rank(sc, {ctxs[c].settings[0], 0});
    for (int o = 0; o < 4; ++o) CHECK(b(static_cast<std::int64_t>(c), o) == (o == expected ? 1.0 : 0.0));
  }
}

TEST_CASE("every deterministic behavior validates with zero tolerance") {
  for (const Scenario& sc : {Scenario::bipartite(3), Scenario::bipartite(2, 3), Scenario::multipartite(3),
                             Scenario::cycle(3)}) {
    for (const auto& s : enumerate_strategies(sc)) {
      const Behavior b = strategy_behavior(s, sc);
      CHECK(validate_behavior(b).passed(0.0));
      CHECK(b.table.sum() == doctest::Approx(static_cast<double>(sc.context_count())));
    }
  }
}

TEST_CASE("validation reports") {
  const Scenario sc = Scenario::bipartite(2);
  CHECK(validate_behavior(uniform_behavior(sc)).passed(kExactTolerance));
  CHECK(validate_behavior(pr_box(sc)).passed(kExactTolerance));

  Behavior scaled = uniform_behavior(sc);
  scaled.table.segment(4, 4) *= 1.1;
  const ValidationReport rep = validate_behavior(scaled);
  CHECK(rep.normalization == doctest::Approx(0.1));
  CHECK_FALSE(rep.passed(1e-3));

  // Signalling: Alice's marginal depends on Bob's setting.
  Behavior sig{sc, Eigen::VectorXd::Zero(16)};
  sig.table(0) = 1.0;       // ctx (0,0): a=0,b=0
  sig.table(4 + 2) = 1.0;   // ctx (0,1): a=1,b=0
  sig.table(8) = 1.0;
  sig.table(12) = 1.0;
  const ValidationReport srep = validate_behavior(sig);
  CHECK(srep.normalization == 0.0);
  CHECK(srep.nonsignalling[1] == doctest::Approx(1.0));
}

TEST_CASE("full correlators") {
  const Scenario sc = Scenario::bipartite(2);
  Eigen::Matrix2d pr;
  pr << 1, 1, 1, -1;
  CHECK(full_correlators(pr_box(sc)).matrix().isApprox(pr));
  CHECK(full_correlators(uniform_behavior(sc)).values.isZero());
  const auto s = enumerate_strategies(sc);
  CHECK(full_correlators(strategy_behavior(s.front(), sc)).values.isOnes());
  CHECK(full_correlators(pr_box(sc)).scenario.full_correlators());
  CHECK_THROWS_AS(full_correlators(uniform_behavior(Scenario::bipartite(2, 3))), InvalidArgument);
}

TEST_CASE("deterministic correlators are rank one sign patterns") {
  const Scenario sc = Scenario::bipartite(3);
  for (const auto& s : enumerate_strategies(sc)) {
    const Eigen::MatrixXd T = full_correlators(strategy_behavior(s, sc)).matrix();
    CHECK(T.cwiseAbs().isOnes());
    Eigen::FullPivLU<Eigen::MatrixXd> lu(T);
    CHECK(lu.rank() == 1);
  }
  const Scenario tri = Scenario::multipartite(3);
  for (const auto& s : enumerate_strategies(tri)) {
    const Eigen::VectorXd v = full_correlators(strategy_behavior(s, tri)).values;
    const auto ctxs = enumerate_contexts(tri);
    for (std::size_t c = 0; c < ctxs.size(); ++c) {
      double prod = 1.0;
      for (int p = 0; p < 3; ++p) prod *= outcome_sign(s(p, ctxs[c].settings[p]));
      CHECK(v(static_cast<Eigen::Index>(c)) == prod);
    }
  }
}

TEST_CASE("labels") {
  CHECK(Scenario::bipartite(3).label() == "(2,3,2)");
  CHECK(Scenario::multipartite(3).label() == "(3,2,2)");
  CHECK(Scenario::cycle(4, Framework::FullCorrelators).label() == "cycle(4)/full");
}
