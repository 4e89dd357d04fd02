#include "bellgeo/errors.hpp"
#include "bellgeo/experiments.hpp"
#include "bellgeo/io.hpp"
#include "bellgeo/rng.hpp"

#include "support.hpp"

#include <doctest.h>

#include <sstream>

using namespace bellgeo;
using Eigen::MatrixXd;
using Eigen::VectorXd;

namespace {

ExperimentSpec small_spec() {
  ExperimentSpec s;
  s.m = 3;
  s.n_samples = 300;
  s.seed = 61;
  return s;
}

}  // namespace

TEST_CASE("names") {
  CHECK(parse_scenario_kind("2m2") == ScenarioKind::Bipartite);
  CHECK(parse_scenario_kind("N22") == ScenarioKind::Multipartite);
  CHECK(parse_scenario_kind("22d") == ScenarioKind::TwoTwoD);
  CHECK(parse_scenario_kind("cycle") == ScenarioKind::Cycle);
  CHECK_THROWS_AS(parse_scenario_kind("3m3"), InvalidArgument);
  CHECK(parse_framework("full") == Framework::FullCorrelators);
  CHECK(to_string(Framework::Complete) == "complete");
}

TEST_CASE("spec JSON round trip") {
  ExperimentSpec s = small_spec();
  s.kind = ScenarioKind::Cycle;
  s.n = 4;
  s.framework = Framework::FullCorrelators;
  s.method = SamplingMethod::IidBox;
  s.eps = 1e-9;
  s.bins = 40;
  s.range_hi = 0.25;
  s.burn_in = 17;
  s.chains = 2;
  const std::string text = s.to_json();
  CHECK(ExperimentSpec::from_json(text) == s);
  CHECK(ExperimentSpec::from_json(text).to_json() == text);
  // the worker count is not part of the result
  ExperimentSpec t = s;
  t.threads = 4;
  CHECK(t.to_json() == text);

  CHECK_THROWS_AS(ExperimentSpec::from_json("{\"bogus\": 1}"), InvalidArgument);
  CHECK_THROWS_AS(ExperimentSpec::from_json("{\"m\": \"three\"}"), InvalidArgument);
  CHECK_THROWS_AS(ExperimentSpec::from_json("not json"), InvalidArgument);
  CHECK(ExperimentSpec::from_json("{}") == ExperimentSpec{});
}

TEST_CASE("spec validation") {
  ExperimentSpec s = small_spec();
  s.method = SamplingMethod::IidBox;
  CHECK_THROWS_AS(s.validate(), InvalidArgument);
  s = small_spec();
  s.bins = 0;
  CHECK_THROWS_AS(s.validate(), InvalidArgument);
  s = small_spec();
  s.range_lo = 1.0;
  CHECK_THROWS_AS(s.validate(), InvalidArgument);
  s = small_spec();
  s.m = 1;
  CHECK_THROWS_AS(s.validate(), InvalidArgument);
  CHECK(small_spec().scenario() == Scenario::bipartite(3));
}

TEST_CASE("scenario descriptors round trip") {
  for (const Scenario& sc :
       {Scenario::bipartite(3), Scenario::bipartite(4, 2, Framework::FullCorrelators), Scenario::two_two_d(3),
        Scenario::two_two_d(2), Scenario::multipartite(3, Framework::FullCorrelators), Scenario::cycle(5)}) {
    CHECK(parse_scenario_descriptor(scenario_descriptor(sc)) == sc);
    CHECK(parse_scenario_descriptor("# " + scenario_descriptor(sc)) == sc);
  }
  CHECK(scenario_descriptor(Scenario::bipartite(3)) == "scenario=2m2 m=3 d=2 framework=complete");
  CHECK_THROWS_AS(parse_scenario_descriptor("scenario=2m2 m=3 colour=red"), InvalidArgument);
}

TEST_CASE("CSV round trips") {
  Rng rng(62);
  const Scenario sc = Scenario::multipartite(3);
  const Behavior b = testing::random_local_mixture(sc, rng);
  std::stringstream bs;
  write_behavior_csv(bs, b);
  const Behavior b2 = read_behavior_csv(bs);
  CHECK(b2.scenario == sc);
  CHECK(b2.table == b.table);

  const CoordVector c = to_coords(b);
  std::stringstream cs;
  write_coords_csv(cs, c);
  const CoordVector c2 = read_coords_csv(cs);
  CHECK(c2.scenario == sc);
  CHECK(c2.coords == c.coords);

  ExperimentSpec spec = small_spec();
  const MatrixXd z = draw_samples(spec).samples;
  std::stringstream ss;
  write_samples_csv(ss, spec, z);
  ExperimentSpec back;
  CHECK(read_samples_csv(ss, &back) == z);
  CHECK(back == spec);

  std::stringstream bad("# scenario=2m2 m=2 d=2 framework=complete\ncontext_rank,outcome_rank,probability\n0,0,0.5\n");
  CHECK_THROWS_AS(read_behavior_csv(bad), InvalidArgument);
}

TEST_CASE("polytope and correlator exports") {
  std::ostringstream os;
  write_polytope_csv(os, ns_inequalities(Scenario::cycle(2)));
  const std::string text = os.str();
  CHECK(text.find("row,col,value\n") != std::string::npos);
  CHECK(text.find("\n15,") != std::string::npos);
  CHECK(text.find("coord,lower,upper\n0,-1,1\n") != std::string::npos);

  std::ostringstream fs;
  write_fullcorr_csv(fs, full_correlators(pr_box(Scenario::bipartite(2))));
  CHECK(fs.str() ==
        "# scenario=2m2 m=2 d=2 framework=full\ncontext_rank,value\n0,1\n1,1\n2,1\n3,-1\n");

  std::ostringstream ca;
  write_cycle_analytic_csv(ca, 2, 3);
  CHECK(ca.str().rfind("n,pyramid_volume,local_ratio\n2,", 0) == 0);
}

TEST_CASE("histogram bookkeeping") {
  ExperimentSpec s;
  s.bins = 4;
  s.range_hi = 0.4;
  VectorXd nl(8);
  nl << 0.0, 5e-11, 0.05, 0.15, 0.15, 0.39, 0.4, 0.9;
  const Histogram h = make_histogram(s, nl);
  CHECK(h.total == 8);
  CHECK(h.local_count == 2);
  CHECK(h.counts == std::vector<std::int64_t>{1, 2, 0, 3});
  CHECK(h.clamped == 2);
  CHECK(h.mode_bin == 3);
  std::int64_t sum = h.local_count;
  for (auto c : h.counts) sum += c;
  CHECK(sum == h.total);
  for (Eigen::Index i = 0; i + 1 < h.edges.size(); ++i) CHECK(h.edges(i) < h.edges(i + 1));

  const Histogram all_local = make_histogram(s, VectorXd::Zero(5));
  CHECK(all_local.local_count == 5);
  CHECK(all_local.mode_bin == -1);
}

TEST_CASE("hull mixtures put all mass in the local count") {
  Rng rng(63);
  const Scenario sc = Scenario::bipartite(2);
  MatrixXd z(8, 50);
  for (int k = 0; k < 50; ++k) z.col(k) = to_coords(testing::random_local_mixture(sc, rng)).coords;
  ExperimentSpec s;
  const Histogram h = make_histogram(s, nl_samples(z, local_vertex_basis(sc)));
  CHECK(h.local_count == 50);
  CHECK(h.mode_bin == -1);
}

TEST_CASE("volume and histogram runs are deterministic") {
  const ExperimentSpec s = small_spec();
  const VolumeReport a = run_volume(s);
  const VolumeReport b = run_volume(s);
  CHECK(a.local_count == b.local_count);
  CHECK(a.n_samples == 300);
  CHECK(a.local_fraction >= 0.0);
  CHECK(a.local_fraction <= 1.0);
  CHECK_FALSE(a.ns_acceptance.has_value());

  std::ostringstream v1, v2;
  write_volume_csv(v1, {a});
  write_volume_csv(v2, {b});
  CHECK(v1.str() == v2.str());

  const Histogram h = run_histogram(s);
  CHECK(h.local_count == a.local_count);
  std::ostringstream h1, h2;
  write_histogram_csv(h1, h);
  // rerun from the spec embedded in the file
  const std::string text = h1.str();
  const std::string json = text.substr(7, text.find('\n') - 7);
  write_histogram_csv(h2, run_histogram(ExperimentSpec::from_json(json)));
  CHECK(h2.str() == text);

  ExperimentSpec threaded = s;
  threaded.threads = 3;
  CHECK(run_volume(threaded).local_count == a.local_count);
}

TEST_CASE("rejection volume reports the acceptance rate") {
  ExperimentSpec s;
  s.kind = ScenarioKind::Cycle;
  s.n = 2;
  s.method = SamplingMethod::Rejection;
  s.n_samples = 200;
  const VolumeReport r = run_volume(s);
  REQUIRE(r.ns_acceptance.has_value());
  CHECK(*r.ns_acceptance > 0.01);
  CHECK(*r.ns_acceptance < 0.05);
  std::ostringstream os;
  write_volume_csv(os, {r});
  CHECK(os.str().find("cycle,2,complete,reject,200,") != std::string::npos);
}

TEST_CASE("local fractions fall with the number of settings") {
  double prev = 1.0;
  for (int m = 2; m <= 4; ++m) {
    ExperimentSpec s;
    s.m = m;
    s.framework = Framework::FullCorrelators;
    s.method = SamplingMethod::IidBox;
    s.n_samples = 5000;
    const double f = run_volume(s).local_fraction;
    CHECK(f <= prev);
    prev = f;
  }
}

TEST_CASE("(2,2,d) runs") {
  ExperimentSpec s;
  s.kind = ScenarioKind::TwoTwoD;
  s.d = 2;
  s.n_samples = 500;
  const TwoTwoDReport r = run_22d(s);
  CHECK(r.volume.n_samples == 500);
  CHECK(r.frac_nl_le_10eps >= r.volume.local_fraction);
  CHECK(r.frac_nl_le_100eps >= r.frac_nl_le_10eps);
  CHECK_FALSE(r.note.empty());
  CHECK(r.histogram.total == 500);

  s.kind = ScenarioKind::Bipartite;
  CHECK_THROWS_AS(run_22d(s), InvalidArgument);
  s.kind = ScenarioKind::TwoTwoD;
  s.d = 5;
  CHECK_THROWS_AS(run_22d(s), InvalidArgument);
}

TEST_CASE("reproduce") {
  const ReproReport r = reproduce("cycle-analytic");
  REQUIRE(r.rows.size() == 3);
  CHECK(r.pass());
  std::ostringstream os;
  print_report(os, r);
  CHECK(os.str().find("PASS") != std::string::npos);
  CHECK_THROWS_AS(reproduce("VI"), InvalidArgument);
  CHECK_THROWS_AS(reproduce("I", 1, 0.0), InvalidArgument);
  const ReproReport small = reproduce("V", 1, 0.01);
  CHECK(small.rows.size() == 3);
  CHECK(small.rows[0].n_samples == 10000);
}

TEST_CASE("number formatting round trips") {
  for (double x : {0.1, 1.0 / 3, -2.5e-300, 0.0, 1e22}) CHECK(std::stod(format_double(x)) == x);
  CHECK(format_double(0.5) == "0.5");
}
