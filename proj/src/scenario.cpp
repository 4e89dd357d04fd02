#include "bellgeo/scenario.hpp"

#include "bellgeo/errors.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

namespace bellgeo {

namespace {

std::int64_t ipow(std::int64_t base, int exp) {
  std::int64_t r = 1;
  for (int i = 0; i < exp; ++i) r *= base;
  return r;
}

void require(bool ok, const std::string& msg) {
  if (!ok) throw InvalidArgument(msg);
}

}  // namespace

Scenario::Scenario(Family f, int parties, int settings, int outcomes, Framework fw, Chart chart)
    : family_(f), parties_(parties), settings_(settings), outcomes_(outcomes), framework_(fw),
      chart_(chart) {}

Scenario Scenario::bipartite(int m, int d, Framework fw) {
  require(m >= 2, "bipartite scenario needs m >= 2 settings");
  require(d >= 2, "bipartite scenario needs d >= 2 outcomes");
  require(fw == Framework::Complete || d == 2, "full correlators need binary outcomes");
  require(d == 2 || m == 2, "non-binary outcomes are only supported for (2,2,d)");
  return Scenario(Family::Bipartite, 2, m, d, fw, d == 2 ? Chart::Correlator : Chart::Probability);
}

Scenario Scenario::two_two_d(int d, Framework fw) {
  Scenario sc = bipartite(2, d, fw);
  if (fw == Framework::Complete) sc.chart_ = Chart::Probability;
  return sc;
}

Scenario Scenario::multipartite(int parties, Framework fw) {
  require(parties >= 2, "multipartite scenario needs N >= 2 parties");
  require(parties <= 12, "multipartite scenario supports at most 12 parties");
  return Scenario(Family::Multipartite, parties, 2, 2, fw, Chart::Correlator);
}

Scenario Scenario::cycle(int n, Framework fw) {
  require(n >= 2, "cycle scenario needs n >= 2");
  return Scenario(Family::Cycle, 2, n, 2, fw, Chart::Correlator);
}

std::int64_t Scenario::context_count() const {
  switch (family_) {
    case Family::Bipartite: return std::int64_t(settings_) * settings_;
    case Family::Multipartite: return ipow(2, parties_);
    case Family::Cycle: return 2 * std::int64_t(settings_);
  }
  return 0;
}

std::int64_t Scenario::outcome_tuples() const { return ipow(outcomes_, parties_); }

Scenario Scenario::with_framework(Framework fw) const {
  switch (family_) {
    case Family::Bipartite:
      return chart_ == Chart::Probability ? two_two_d(outcomes_, fw) : bipartite(settings_, outcomes_, fw);
    case Family::Multipartite: return multipartite(parties_, fw);
    case Family::Cycle: return cycle(settings_, fw);
  }
  return *this;
}

std::string Scenario::label() const {
  std::ostringstream os;
  if (family_ == Family::Cycle) {
    os << "cycle(" << settings_ << ")";
  } else {
    os << "(" << parties_ << "," << settings_ << "," << outcomes_ << ")";
  }
  if (full_correlators()) os << "/full";
  return os.str();
}

DeterministicStrategy::DeterministicStrategy(int parties, int settings, std::vector<int> responses)
    : parties_(parties), settings_(settings), responses_(std::move(responses)) {
  if (static_cast<int>(responses_.size()) != parties_ * settings_)
    throw InvalidArgument("strategy response table has wrong size");
}

Eigen::MatrixXd FullCorrObject::matrix() const {
  const int m = scenario.settings();
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(m, m);
  if (scenario.family() == Family::Multipartite)
    throw InvalidArgument("multipartite correlators have no matrix form");
  const auto ctxs = enumerate_contexts(scenario);
  for (std::size_t c = 0; c < ctxs.size(); ++c)
    out(ctxs[c].settings[0], ctxs[c].settings[1]) = values(static_cast<Eigen::Index>(c));
  return out;
}

double ValidationReport::max_violation() const {
  double v = std::max(normalization, nonnegativity);
  for (double s : nonsignalling) v = std::max(v, s);
  return v;
}

std::vector<Context> enumerate_contexts(const Scenario& sc) {
  std::vector<Context> out;
  if (sc.family() == Family::Cycle) {
    const int n = sc.settings();
    for (int i = 0; i < n; ++i) {
      out.push_back({{i, i}});
      out.push_back({{(i + 1) % n, i}});
    }
    std::sort(out.begin(), out.end());
    return out;
  }
  const int parties = sc.parties();
  const int m = sc.settings();
  const std::int64_t count = sc.context_count();
  out.reserve(static_cast<std::size_t>(count));
  for (std::int64_t r = 0; r < count; ++r) {
    Context c{std::vector<int>(parties)};
    std::int64_t rem = r;
    for (int p = parties - 1; p >= 0; --p) {
      c.settings[p] = static_cast<int>(rem % m);
      rem /= m;
    }
    out.push_back(std::move(c));
  }
  return out;
}

std::int64_t context_rank(const Scenario& sc, const Context& ctx) {
  if (static_cast<int>(ctx.settings.size()) != sc.parties())
    throw InvalidArgument("context arity does not match scenario");
  if (sc.family() == Family::Cycle) {
    const auto ctxs = enumerate_contexts(sc);
    auto it = std::lower_bound(ctxs.begin(), ctxs.end(), ctx);
    if (it == ctxs.end() || !(*it == ctx)) throw InvalidArgument("pair is not a cycle context");
    return it - ctxs.begin();
  }
  std::int64_t r = 0;
  for (int s : ctx.settings) {
    if (s < 0 || s >= sc.settings()) throw InvalidArgument("setting index out of range");
    r = r * sc.settings() + s;
  }
  return r;
}

std::int64_t outcome_rank(const Scenario& sc, const std::vector<int>& outcomes) {
  std::int64_t r = 0;
  for (int a : outcomes) r = r * sc.outcomes() + a;
  return r;
}

std::vector<int> outcome_tuple(const Scenario& sc, std::int64_t rank) {
  std::vector<int> out(sc.parties());
  for (int p = sc.parties() - 1; p >= 0; --p) {
    out[p] = static_cast<int>(rank % sc.outcomes());
    rank /= sc.outcomes();
  }
  return out;
}

long double strategy_count(const Scenario& sc) {
  return std::pow(static_cast<long double>(sc.outcomes()), sc.settings() * sc.parties());
}

std::vector<DeterministicStrategy> enumerate_strategies(const Scenario& sc, std::int64_t cap) {
  const long double required = strategy_count(sc);
  if (required > static_cast<long double>(cap)) {
    std::ostringstream os;
    os << "strategy enumeration for " << sc.label() << " needs " << static_cast<double>(required)
       << " strategies (cap " << cap << ")";
    throw CapExceeded(os.str(), required);
  }
  const auto count = static_cast<std::int64_t>(required);
  const int slots = sc.parties() * sc.settings();
  const int d = sc.outcomes();
  std::vector<DeterministicStrategy> out;
  out.reserve(static_cast<std::size_t>(count));
  std::vector<int> digits(slots, 0);
  for (std::int64_t k = 0; k < count; ++k) {
    out.emplace_back(sc.parties(), sc.settings(), digits);
    for (int i = slots - 1; i >= 0; --i) {
      if (++digits[i] < d) break;
      digits[i] = 0;
    }
  }
  return out;
}

Behavior strategy_behavior(const DeterministicStrategy& s, const Scenario& sc) {
  if (s.parties() != sc.parties() || s.settings() != sc.settings())
    throw InvalidArgument("strategy does not match scenario");
  Behavior b{sc, Eigen::VectorXd::Zero(sc.table_size())};
  const auto ctxs = enumerate_contexts(sc);
  std::vector<int> outs(sc.parties());
  for (std::size_t c = 0; c < ctxs.size(); ++c) {
    for (int p = 0; p < sc.parties(); ++p) outs[p] = s(p, ctxs[c].settings[p]);
    b.table(static_cast<Eigen::Index>(c) * sc.outcome_tuples() + outcome_rank(sc, outs)) = 1.0;
  }
  return b;
}

ValidationReport validate_behavior(const Behavior& b) {
  const Scenario& sc = b.scenario;
  if (b.table.size() != sc.table_size()) throw InvalidArgument("behavior table has wrong length");
  ValidationReport rep;
  const std::int64_t T = sc.outcome_tuples();
  const auto ctxs = enumerate_contexts(sc);
  for (std::size_t c = 0; c < ctxs.size(); ++c) {
    const auto block = b.table.segment(static_cast<Eigen::Index>(c * T), T);
    rep.normalization = std::max(rep.normalization, std::abs(block.sum() - 1.0));
    rep.nonnegativity = std::max(rep.nonnegativity, std::max(0.0, -block.minCoeff()));
  }

  // For party p: the marginal over the remaining parties, keyed by their
  // settings and outcomes, must agree across all contexts sharing those settings.
  rep.nonsignalling.assign(sc.parties(), 0.0);
  for (int p = 0; p < sc.parties(); ++p) {
    std::map<std::pair<std::vector<int>, std::vector<int>>, double> seen;
    for (std::size_t c = 0; c < ctxs.size(); ++c) {
      std::vector<int> others;
      for (int q = 0; q < sc.parties(); ++q)
        if (q != p) others.push_back(ctxs[c].settings[q]);
      std::map<std::vector<int>, double> marg;
      for (std::int64_t o = 0; o < T; ++o) {
        auto outs = outcome_tuple(sc, o);
        outs.erase(outs.begin() + p);
        marg[outs] += b.table(static_cast<Eigen::Index>(c * T + o));
      }
      for (const auto& [outs, v] : marg) {
        auto [it, inserted] = seen.emplace(std::make_pair(others, outs), v);
        if (!inserted) rep.nonsignalling[p] = std::max(rep.nonsignalling[p], std::abs(it->second - v));
      }
    }
  }
  return rep;
}

FullCorrObject full_correlators(const Behavior& b) {
  const Scenario& sc = b.scenario;
  if (sc.outcomes() != 2) throw InvalidArgument("full correlators need binary outcomes");
  const std::int64_t T = sc.outcome_tuples();
  const std::int64_t C = sc.context_count();
  Eigen::VectorXd signs(T);
  for (std::int64_t o = 0; o < T; ++o) {
    double s = 1.0;
    for (int a : outcome_tuple(sc, o)) s *= outcome_sign(a);
    signs(o) = s;
  }
  FullCorrObject out{sc.with_framework(Framework::FullCorrelators), Eigen::VectorXd(C)};
  for (std::int64_t c = 0; c < C; ++c) out.values(c) = signs.dot(b.table.segment(c * T, T));
  return out;
}

Behavior uniform_behavior(const Scenario& sc) {
  return {sc, Eigen::VectorXd::Constant(sc.table_size(), 1.0 / static_cast<double>(sc.outcome_tuples()))};
}

Behavior pr_box(const Scenario& sc) {
  if (sc.parties() != 2 || sc.settings() != 2 || sc.outcomes() != 2)
    throw InvalidArgument("PR box needs a (2,2,2) scenario");
  Behavior b{sc, Eigen::VectorXd::Zero(sc.table_size())};
  const auto ctxs = enumerate_contexts(sc);
  for (std::size_t c = 0; c < ctxs.size(); ++c) {
    const int xy = ctxs[c].settings[0] * ctxs[c].settings[1];
    for (int a = 0; a < 2; ++a)
      for (int bb = 0; bb < 2; ++bb)
        if ((a ^ bb) == xy) b.table(static_cast<Eigen::Index>(c * 4 + a * 2 + bb)) = 0.5;
  }
  return b;
}

}  // namespace bellgeo
