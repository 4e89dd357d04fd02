// One PASS/FAIL line per acceptance criterion; exit status 1 if any fails.

#include "bellgeo/cycle_geometry.hpp"
#include "bellgeo/experiments.hpp"
#include "bellgeo/local_distance.hpp"
#include "bellgeo/norms.hpp"
#include "bellgeo/rng.hpp"

#include "support.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

using namespace bellgeo;
using Eigen::MatrixXd;
using Eigen::VectorXd;

namespace {

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok) pass = false;
    if (detail.tellp() > 0) detail << "; ";
    detail << what << (ok ? "" : " [!]");
  }
};

std::string pct(double fraction, int digits = 3) {
  std::ostringstream os;
  os.precision(digits);
  os << std::fixed << 100.0 * fraction << "%";
  return os.str();
}

ExperimentSpec volume_spec(ScenarioKind kind, int size, Framework fw, SamplingMethod method, std::int64_t n) {
  ExperimentSpec s;
  s.kind = kind;
  s.m = s.N = s.n = s.d = 2;
  switch (kind) {
    case ScenarioKind::Bipartite: s.m = size; break;
    case ScenarioKind::Multipartite: s.N = size; break;
    case ScenarioKind::Cycle: s.n = size; break;
    case ScenarioKind::TwoTwoD: s.d = size; break;
  }
  s.framework = fw;
  s.method = method;
  s.n_samples = n;
  s.seed = 1;
  return s;
}

void volume_check(Outcome& o, const std::string& label, const ExperimentSpec& s, double reference_pct, double tol_pp) {
  const double f = run_volume(s).local_fraction;
  std::ostringstream os;
  os << label << " " << pct(f) << " vs " << reference_pct << "% +-" << tol_pp;
  o.require(std::abs(100.0 * f - reference_pct) <= tol_pp, os.str());
}

Outcome table_one() {
  Outcome o;
  const double reference[] = {94.14, 62.11, 21.20, 3.73};
  for (int m = 2; m <= 5; ++m)
    volume_check(o, "m=" + std::to_string(m),
                 volume_spec(ScenarioKind::Bipartite, m, Framework::Complete, SamplingMethod::Gibbs, 100000),
                 reference[m - 2], 1.5);
  return o;
}

Outcome table_two() {
  Outcome o;
  const double reference[] = {66.66, 14.01, 0.847, 0.016};
  const double tol[] = {0.5, 0.5, 0.5, 0.02};
  for (int m = 2; m <= 5; ++m)
    volume_check(o, "m=" + std::to_string(m),
                 volume_spec(ScenarioKind::Bipartite, m, Framework::FullCorrelators, SamplingMethod::IidBox, 1000000),
                 reference[m - 2], tol[m - 2]);
  return o;
}

Outcome cycle_analytic() {
  Outcome o;
  // The returned double must be the nearest double to 1 - 2^(2n-1)/(2n)!.
  // The pyramid share is tiny, so it is evaluated separately and compared
  // against the gaps to the neighbouring doubles.
  bool exact = true;
  for (int n = 2; n <= 12; ++n) {
    const long double share = std::ldexp(1.0L, 2 * n - 1) / static_cast<long double>(factorial_exact(2 * n));
    const double r = local_volume_ratio(n);
    const auto err = [&](double x) { return std::abs((1.0L - static_cast<long double>(x)) - share); };
    exact = exact && err(r) <= err(std::nextafter(r, 0.0)) && err(r) <= err(std::nextafter(r, 2.0));
  }
  o.require(exact, "closed form correctly rounded for n=2..12");
  const double reference[] = {66.7, 95.6, 99.7};
  for (int n = 2; n <= 4; ++n)
    volume_check(o, "MC n=" + std::to_string(n),
                 volume_spec(ScenarioKind::Cycle, n, Framework::FullCorrelators, SamplingMethod::IidBox, 1000000),
                 reference[n - 2], 0.5);
  return o;
}

Outcome m1_m2_agreement() {
  Outcome o;
  const double reject =
      run_volume(volume_spec(ScenarioKind::Cycle, 2, Framework::Complete, SamplingMethod::Rejection, 100000))
          .local_fraction;
  const double gibbs =
      run_volume(volume_spec(ScenarioKind::Cycle, 2, Framework::Complete, SamplingMethod::Gibbs, 100000))
          .local_fraction;
  o.require(std::abs(reject - gibbs) <= 0.02, "rejection " + pct(reject) + " vs Gibbs " + pct(gibbs) + " within 2pp");
  return o;
}

Outcome tables_four_five() {
  Outcome o;
  volume_check(o, "(3,2,2)",
               volume_spec(ScenarioKind::Multipartite, 3, Framework::Complete, SamplingMethod::Gibbs, 100000), 58.52,
               1.5);
  volume_check(o, "(3,2,2)/full",
               volume_spec(ScenarioKind::Multipartite, 3, Framework::FullCorrelators, SamplingMethod::IidBox, 1000000),
               10.23, 0.5);
  volume_check(o, "(4,2,2)/full",
               volume_spec(ScenarioKind::Multipartite, 4, Framework::FullCorrelators, SamplingMethod::IidBox, 1000000),
               0.0188, 0.01);
  return o;
}

Outcome quantifier_oracle() {
  Outcome o;
  const Scenario sc = Scenario::bipartite(2);
  const VertexBasis basis = local_vertex_basis(sc);
  const double pr = nl_distance(to_coords(pr_box(sc)), basis).nl;
  std::ostringstream os;
  os.precision(12);
  os << "NL(PR)=" << pr;
  o.require(std::abs(pr - 0.25) <= 1e-9, os.str());

  double worst_vertex = 0.0;
  for (const auto& s : enumerate_strategies(sc))
    worst_vertex = std::max(worst_vertex, nl_distance(to_coords(strategy_behavior(s, sc)), basis).nl);
  std::ostringstream vs;
  vs << "16 vertices max NL=" << worst_vertex;
  o.require(worst_vertex <= 1e-12, vs.str());

  Rng rng(2024);
  double worst_mix = 0.0;
  for (int k = 0; k < 1000; ++k)
    worst_mix = std::max(worst_mix, nl_distance(to_coords(testing::random_local_mixture(sc, rng, 6)), basis).nl);
  std::ostringstream ms;
  ms << "1000 hull mixtures max NL=" << worst_mix;
  o.require(worst_mix <= 1e-12, ms.str());
  return o;
}

Outcome norm_suite() {
  Outcome o;
  MatrixXd pr(2, 2);
  pr << 1, 1, 1, -1;
  const double pi = pi_norm(pr);
  const double g2 = gamma2_norm(pr);
  std::ostringstream os;
  os.precision(12);
  os << "pi(PR)=" << pi << " gamma2(PR)=" << g2;
  o.require(std::abs(pi - 2.0) <= 1e-9 && std::abs(g2 - std::sqrt(2.0)) <= 1e-5, os.str());

  Rng rng(7);
  for (int m = 2; m <= 6; ++m) {
    int ordered = 0, monotone = 0;
    for (int k = 0; k < 1000; ++k) {
      const NormReport r = classify(testing::random_matrix(m, m, rng));
      ordered += r.gamma2 <= r.pi_norm + 1e-6;
      monotone += !r.is_classical || r.is_quantum;
    }
    o.require(ordered == 1000 && monotone == 1000,
              "m=" + std::to_string(m) + " gamma2<=pi " + std::to_string(ordered) + "/1000, classical=>quantum " +
                  std::to_string(monotone) + "/1000");
  }
  return o;
}

Outcome concentration() {
  Outcome o;
  std::vector<int> modes;
  for (int m = 2; m <= 5; ++m) {
    ExperimentSpec s = volume_spec(ScenarioKind::Bipartite, m, Framework::FullCorrelators, SamplingMethod::IidBox, 20000);
    const Histogram h = run_histogram(s);
    modes.push_back(h.mode_bin);
    if (m == 2) {
      // decreasing up to 3 standard deviations of the difference of neighbouring bins
      bool decreasing = h.mode_bin == 0;
      for (std::size_t b = 0; b + 1 < h.counts.size(); ++b) {
        const double a = static_cast<double>(h.counts[b]);
        const double c = static_cast<double>(h.counts[b + 1]);
        decreasing = decreasing && c <= a + 3.0 * std::sqrt(a + c);
      }
      o.require(decreasing, "m=2 mode_bin=" + std::to_string(h.mode_bin) + " and decreasing");
    }
  }
  o.require(modes[1] < modes[2] && modes[2] < modes[3], "mode bins m=3,4,5: " + std::to_string(modes[1]) + "," +
                                                            std::to_string(modes[2]) + "," + std::to_string(modes[3]));
  return o;
}

Outcome two_two_d() {
  Outcome o;
  volume_check(o, "d=2",
               volume_spec(ScenarioKind::TwoTwoD, 2, Framework::Complete, SamplingMethod::Gibbs, 100000), 94.14, 1.5);
  // regression values from the first run at seed 1, 5000 samples
  const double locked[] = {94.24, 97.14};
  for (int d = 3; d <= 4; ++d) {
    const TwoTwoDReport r =
        run_22d(volume_spec(ScenarioKind::TwoTwoD, d, Framework::Complete, SamplingMethod::Gibbs, 5000));
    std::ostringstream os;
    os << "d=" << d << " local " << pct(r.volume.local_fraction, 2) << " (locked " << locked[d - 3]
       << "% +-0.5), NL<=10eps " << pct(r.frac_nl_le_10eps, 2) << ", NL<=100eps " << pct(r.frac_nl_le_100eps, 2);
    const bool diagnostics = r.frac_nl_le_10eps >= r.volume.local_fraction &&
                             r.frac_nl_le_100eps >= r.frac_nl_le_10eps && !r.note.empty();
    o.require(diagnostics && std::abs(100.0 * r.volume.local_fraction - locked[d - 3]) <= 0.5, os.str());
  }
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"table-I", table_one},
      {"table-II", table_two},
      {"cycle-analytic", cycle_analytic},
      {"m1-m2-agreement", m1_m2_agreement},
      {"tables-IV-V", tables_four_five},
      {"quantifier-oracle", quantifier_oracle},
      {"norm-suite", norm_suite},
      {"concentration", concentration},
      {"two-two-d", two_two_d},
  };
  int failed = 0;
  for (const auto& [name, run] : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = run();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail << "exception: " << e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("%s %s: %s (%.1fs)\n", o.pass ? "PASS" : "FAIL", name.c_str(), o.detail.str().c_str(), secs);
    std::fflush(stdout);
    failed += !o.pass;
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed ? 1 : 0;
}
