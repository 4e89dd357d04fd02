#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <string>
#include <vector>

namespace bellgeo {

enum class Family { Bipartite, Multipartite, Cycle };

/// Complete probability tables, or only the full correlators <x1...xN>.
enum class Framework { Complete, FullCorrelators };

/// Coordinate chart used for complete bipartite scenarios: correlators
/// (<x>, <y>, <xy>) for binary outcomes, or kept probabilities for d > 2.
enum class Chart { Correlator, Probability };

/// A Bell scenario: one of the three supported families plus a framework.
///
/// Bipartite(m, d): two parties, m settings, d outcomes each.
/// Multipartite(N): N parties with two binary measurements each.
/// Cycle(n): two parties with n binary settings each where only the 2n
/// adjacent pairs (x_i, y_i) and (x_{i+1}, y_i) are jointly measured.
class Scenario {
 public:
  static Scenario bipartite(int m, int d = 2, Framework fw = Framework::Complete);
  /// (2,2,d) with the kept-probability chart, including d = 2.
  static Scenario two_two_d(int d, Framework fw = Framework::Complete);
  static Scenario multipartite(int parties, Framework fw = Framework::Complete);
  static Scenario cycle(int n, Framework fw = Framework::Complete);

  Family family() const { return family_; }
  Framework framework() const { return framework_; }
  Chart chart() const { return chart_; }
  bool full_correlators() const { return framework_ == Framework::FullCorrelators; }

  int parties() const { return parties_; }
  /// Settings per party (cycle length for Cycle).
  int settings() const { return settings_; }
  int outcomes() const { return outcomes_; }

  std::int64_t context_count() const;
  /// Number of joint outcome tuples per context (d^parties).
  std::int64_t outcome_tuples() const;
  /// Length of the dense behavior table.
  std::int64_t table_size() const { return context_count() * outcome_tuples(); }

  Scenario with_framework(Framework fw) const;

  /// Short label such as "(2,3,2)", "(3,2,2)" or "cycle(4)", with a "/full" suffix.
  std::string label() const;

  friend bool operator==(const Scenario&, const Scenario&) = default;

 private:
  Scenario(Family f, int parties, int settings, int outcomes, Framework fw, Chart chart);

  Family family_;
  int parties_;
  int settings_;
  int outcomes_;
  Framework framework_;
  Chart chart_;
};

/// One jointly measured setting tuple, one index per party.
struct Context {
  std::vector<int> settings;
  friend bool operator==(const Context&, const Context&) = default;
  friend auto operator<=>(const Context&, const Context&) = default;
};

/// Local deterministic response: outcome for every (party, setting).
class DeterministicStrategy {
 public:
  DeterministicStrategy(int parties, int settings, std::vector<int> responses);

  int operator()(int party, int setting) const { return responses_[party * settings_ + setting]; }
  int parties() const { return parties_; }
  int settings() const { return settings_; }
  const std::vector<int>& responses() const { return responses_; }

 private:
  int parties_;
  int settings_;
  std::vector<int> responses_;
};

/// Dense conditional-probability table indexed by
/// context_rank * outcome_tuples + outcome_rank (both lexicographic).
struct Behavior {
  Scenario scenario;
  Eigen::VectorXd table;

  double operator()(std::int64_t context, std::int64_t outcome) const {
    return table(context * scenario.outcome_tuples() + outcome);
  }
};

/// Full correlators in context order. Bipartite: row-major m x m matrix.
struct FullCorrObject {
  Scenario scenario;
  Eigen::VectorXd values;

  /// Bipartite and cycle objects reshaped to an m x m matrix (absent cycle
  /// pairs are zero).
  Eigen::MatrixXd matrix() const;
};

struct ValidationReport {
  double normalization = 0.0;   ///< max |sum_outcomes p - 1|
  double nonnegativity = 0.0;   ///< max(0, -min p)
  /// Max nonsignalling violation per party: marginal of the other parties
  /// must not depend on this party's setting.
  std::vector<double> nonsignalling;

  double max_violation() const;
  bool passed(double tol) const { return max_violation() <= tol; }
};

constexpr double kExactTolerance = 1e-12;
constexpr double kCliTolerance = 1e-10;
constexpr std::int64_t kDefaultStrategyCap = 1'000'000;

/// +1 for outcome index 0, -1 for outcome index 1.
inline double outcome_sign(int outcome) { return outcome == 0 ? 1.0 : -1.0; }

std::vector<Context> enumerate_contexts(const Scenario& sc);
std::int64_t context_rank(const Scenario& sc, const Context& ctx);
std::int64_t outcome_rank(const Scenario& sc, const std::vector<int>& outcomes);
std::vector<int> outcome_tuple(const Scenario& sc, std::int64_t rank);

/// d^(m N) for every family; as long double so oversized counts can be reported.
long double strategy_count(const Scenario& sc);

std::vector<DeterministicStrategy> enumerate_strategies(const Scenario& sc,
                                                        std::int64_t cap = kDefaultStrategyCap);

Behavior strategy_behavior(const DeterministicStrategy& s, const Scenario& sc);

ValidationReport validate_behavior(const Behavior& b);

FullCorrObject full_correlators(const Behavior& b);

/// p = 1/d^N for every context.
Behavior uniform_behavior(const Scenario& sc);

/// p(a,b|x,y) = 1/2 iff a xor b = x y. Requires two binary settings per
/// party on two parties (CHSH, either chart, or cycle(2)).
Behavior pr_box(const Scenario& sc);

}  // namespace bellgeo
