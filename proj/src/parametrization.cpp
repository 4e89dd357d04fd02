#include "bellgeo/parametrization.hpp"

#include <algorithm>
#include <sstream>

namespace bellgeo {

namespace {

using Eigen::Index;
using Eigen::MatrixXd;
using Eigen::VectorXd;

Index ipow(Index base, int exp) {
  Index r = 1;
  for (int i = 0; i < exp; ++i) r *= base;
  return r;
}

// Zero-marginal behavior from one correlator per context (any binary family).
AffineChart full_correlator_chart(const Scenario& sc) {
  const Index C = sc.context_count();
  const Index T = sc.outcome_tuples();
  AffineChart ch{VectorXd::Constant(C * T, 1.0 / static_cast<double>(T)), MatrixXd::Zero(C * T, C),
                 MatrixXd::Zero(C, C * T)};
  for (Index o = 0; o < T; ++o) {
    double s = 1.0;
    for (int a : outcome_tuple(sc, o)) s *= outcome_sign(a);
    for (Index c = 0; c < C; ++c) {
      ch.map(c * T + o, c) = s / static_cast<double>(T);
      ch.extract(c, c * T + o) = s;
    }
  }
  return ch;
}

// (<x_i>, <y_j>, <x_i y_j>) for two binary parties over an arbitrary context list.
AffineChart correlator_chart(const Scenario& sc) {
  const auto ctxs = enumerate_contexts(sc);
  const Index m = sc.settings();
  const Index C = static_cast<Index>(ctxs.size());
  const Index dim = 2 * m + C;
  AffineChart ch{VectorXd::Constant(C * 4, 0.25), MatrixXd::Zero(C * 4, dim), MatrixXd::Zero(dim, C * 4)};
  std::vector<Index> alpha_src(m, -1), beta_src(m, -1);
  for (Index c = 0; c < C; ++c) {
    const int x = ctxs[c].settings[0];
    const int y = ctxs[c].settings[1];
    if (alpha_src[x] < 0) alpha_src[x] = c;
    if (beta_src[y] < 0) beta_src[y] = c;
    for (int a = 0; a < 2; ++a) {
      for (int b = 0; b < 2; ++b) {
        const Index row = c * 4 + a * 2 + b;
        ch.map(row, x) = outcome_sign(a) / 4.0;
        ch.map(row, m + y) = outcome_sign(b) / 4.0;
        ch.map(row, 2 * m + c) = outcome_sign(a) * outcome_sign(b) / 4.0;
        ch.extract(2 * m + c, row) = outcome_sign(a) * outcome_sign(b);
      }
    }
  }
  for (Index x = 0; x < m; ++x)
    for (int a = 0; a < 2; ++a)
      for (int b = 0; b < 2; ++b) {
        ch.extract(x, alpha_src[x] * 4 + a * 2 + b) = outcome_sign(a);
        ch.extract(m + x, beta_src[x] * 4 + a * 2 + b) = outcome_sign(b);
      }
  return ch;
}

struct SubsetCoord {
  std::vector<int> parties;   // sorted subset S
  std::vector<int> settings;  // x_S, aligned with parties
};

std::vector<SubsetCoord> multipartite_coords(int N) {
  std::vector<SubsetCoord> out;
  for (int k = 1; k <= N; ++k) {
    // subsets of size k in lexicographic order
    std::vector<int> subset(k);
    for (int i = 0; i < k; ++i) subset[i] = i;
    while (true) {
      for (Index s = 0; s < ipow(2, k); ++s) {
        SubsetCoord sc{subset, std::vector<int>(k)};
        for (int i = 0; i < k; ++i) sc.settings[i] = static_cast<int>((s >> (k - 1 - i)) & 1);
        out.push_back(std::move(sc));
      }
      int i = k - 1;
      while (i >= 0 && subset[i] == N - k + i) --i;
      if (i < 0) break;
      ++subset[i];
      for (int j = i + 1; j < k; ++j) subset[j] = subset[j - 1] + 1;
    }
  }
  return out;
}

// Coordinates p(1..1 | x_S) (outcome index 1 is "-1"); every table entry is
// recovered by Moebius inversion over supersets of its "-1" party set.
AffineChart multipartite_chart(const Scenario& sc) {
  const int N = sc.parties();
  const auto coords = multipartite_coords(N);
  const Index dim = static_cast<Index>(coords.size());
  const Index C = sc.context_count();
  const Index T = sc.outcome_tuples();
  AffineChart ch{VectorXd::Zero(C * T), MatrixXd::Zero(C * T, dim), MatrixXd::Zero(dim, C * T)};
  const auto ctxs = enumerate_contexts(sc);
  for (Index c = 0; c < C; ++c) {
    for (Index o = 0; o < T; ++o) {
      const auto outs = outcome_tuple(sc, o);
      unsigned minus_set = 0;
      for (int p = 0; p < N; ++p)
        if (outs[p] == 1) minus_set |= 1u << p;
      if (minus_set == 0) ch.offset(c * T + o) = 1.0;
      for (Index k = 0; k < dim; ++k) {
        const auto& sub = coords[k];
        unsigned mask = 0;
        bool settings_match = true;
        for (std::size_t i = 0; i < sub.parties.size(); ++i) {
          mask |= 1u << sub.parties[i];
          if (ctxs[c].settings[sub.parties[i]] != sub.settings[i]) settings_match = false;
        }
        if (!settings_match || (mask & minus_set) != minus_set) continue;
        const int extra = __builtin_popcount(mask) - __builtin_popcount(minus_set);
        ch.map(c * T + o, k) = (extra % 2 == 0) ? 1.0 : -1.0;
      }
    }
  }
  for (Index k = 0; k < dim; ++k) {
    const auto& sub = coords[k];
    Context ctx{std::vector<int>(N, 0)};
    for (std::size_t i = 0; i < sub.parties.size(); ++i) ctx.settings[sub.parties[i]] = sub.settings[i];
    const Index c = context_rank(sc, ctx);
    for (Index o = 0; o < T; ++o) {
      const auto outs = outcome_tuple(sc, o);
      bool all_minus = true;
      for (int p : sub.parties) all_minus = all_minus && outs[p] == 1;
      if (all_minus) ch.extract(k, c * T + o) = 1.0;
    }
  }
  return ch;
}

// Affine expression over the coordinate vector.
struct Affine {
  double constant = 0.0;
  VectorXd coef;
};

// (2,2,d): kept probabilities, then B marginals (y=0 from context (1,0),
// y=1 from context (0,1)), A marginals (x=0 from (0,0), x=1 from (1,1)),
// then the dropped row a=d-1 of (0,0),(1,1) and column b=d-1 of (0,1),(1,0).
AffineChart probability_chart(const Scenario& sc) {
  const int d = sc.outcomes();
  const Index T = Index(d) * d;
  const Index dim = 4 * Index(d) * (d - 1);
  AffineChart ch{VectorXd::Zero(4 * T), MatrixXd::Zero(4 * T, dim), MatrixXd::Zero(dim, 4 * T)};

  std::vector<Affine> p(4 * T, Affine{0.0, VectorXd::Zero(dim)});
  auto entry = [&](int ctx, int a, int b) -> Affine& { return p[ctx * T + a * d + b]; };
  Index k = 0;
  for (int ctx = 0; ctx < 4; ++ctx) {
    const bool rows_kept = (ctx == 0 || ctx == 3);
    for (int a = 0; a < d; ++a)
      for (int b = 0; b < d; ++b) {
        if (rows_kept ? a == d - 1 : b == d - 1) continue;
        entry(ctx, a, b).coef(k) = 1.0;
        ch.extract(k, ctx * T + a * d + b) = 1.0;
        ++k;
      }
  }

  auto marginal = [&](int ctx, bool of_b) {
    std::vector<Affine> marg(d, Affine{0.0, VectorXd::Zero(dim)});
    for (int v = 0; v < d - 1; ++v)
      for (int w = 0; w < d; ++w) {
        const Affine& e = of_b ? entry(ctx, w, v) : entry(ctx, v, w);
        marg[v].constant += e.constant;
        marg[v].coef += e.coef;
      }
    marg[d - 1].constant = 1.0;
    for (int v = 0; v < d - 1; ++v) {
      marg[d - 1].constant -= marg[v].constant;
      marg[d - 1].coef -= marg[v].coef;
    }
    return marg;
  };
  const auto pb0 = marginal(2, true);
  const auto pb1 = marginal(1, true);
  const auto pa0 = marginal(0, false);
  const auto pa1 = marginal(3, false);

  auto fill_row = [&](int ctx, const std::vector<Affine>& pb) {
    for (int b = 0; b < d; ++b) {
      Affine r = pb[b];
      for (int a = 0; a < d - 1; ++a) {
        r.constant -= entry(ctx, a, b).constant;
        r.coef -= entry(ctx, a, b).coef;
      }
      entry(ctx, d - 1, b) = r;
    }
  };
  auto fill_col = [&](int ctx, const std::vector<Affine>& pa) {
    for (int a = 0; a < d; ++a) {
      Affine r = pa[a];
      for (int b = 0; b < d - 1; ++b) {
        r.constant -= entry(ctx, a, b).constant;
        r.coef -= entry(ctx, a, b).coef;
      }
      entry(ctx, a, d - 1) = r;
    }
  };
  fill_row(0, pb0);
  fill_row(3, pb1);
  fill_col(1, pa0);
  fill_col(2, pa1);

  for (Index i = 0; i < 4 * T; ++i) {
    ch.offset(i) = p[i].constant;
    ch.map.row(i) = p[i].coef.transpose();
  }
  return ch;
}

}  // namespace

bool PolytopeH::contains(const Eigen::Ref<const VectorXd>& z, double tol) const {
  return violation(z) <= tol;
}

double PolytopeH::violation(const Eigen::Ref<const VectorXd>& z) const {
  double v = 0.0;
  if (A.rows() > 0) v = std::max(v, (A * z - b).maxCoeff());
  v = std::max(v, (lower - z).maxCoeff());
  v = std::max(v, (z - upper).maxCoeff());
  return std::max(v, 0.0);
}

Index dimension(const Scenario& sc) {
  const Index m = sc.settings();
  if (sc.full_correlators()) return sc.context_count();
  switch (sc.family()) {
    case Family::Bipartite:
      if (sc.chart() == Chart::Probability) return 4 * Index(sc.outcomes()) * (sc.outcomes() - 1);
      return m * m + 2 * m;
    case Family::Multipartite: return ipow(3, sc.parties()) - 1;
    case Family::Cycle: return 4 * m;
  }
  return 0;
}

AffineChart affine_chart(const Scenario& sc) {
  if (sc.full_correlators()) return full_correlator_chart(sc);
  if (sc.family() == Family::Multipartite) return multipartite_chart(sc);
  if (sc.chart() == Chart::Probability) return probability_chart(sc);
  return correlator_chart(sc);
}

VectorXd reconstruct_table(const AffineChart& chart, const Eigen::Ref<const VectorXd>& z) {
  return chart.offset + chart.map * z;
}

CoordVector to_coords(const Behavior& b) {
  const ValidationReport rep = validate_behavior(b);
  if (!rep.passed(kCliTolerance)) {
    std::ostringstream os;
    os << "behavior is not a valid nonsignalling table (max violation " << rep.max_violation() << ")";
    throw InvalidBehavior(os.str(), rep);
  }
  const AffineChart ch = affine_chart(b.scenario);
  return {b.scenario, ch.extract * b.table};
}

Behavior from_coords(const CoordVector& c, double tol) {
  if (c.coords.size() != dimension(c.scenario)) throw InvalidArgument("coordinate vector has wrong dimension");
  const AffineChart ch = affine_chart(c.scenario);
  Behavior b{c.scenario, reconstruct_table(ch, c.coords)};
  Index worst = 0;
  const double min_p = b.table.minCoeff(&worst);
  if (min_p < -tol) {
    std::ostringstream os;
    os << "point lies outside the nonsignalling polytope: table entry " << worst << " reconstructs to "
       << min_p;
    throw InfeasiblePoint(os.str(), min_p, worst);
  }
  return b;
}

PolytopeH ns_inequalities(const Scenario& sc) {
  const Index dim = dimension(sc);
  PolytopeH poly;
  poly.interior = to_coords(uniform_behavior(sc)).coords;
  if (sc.full_correlators()) {
    poly.A.resize(0, dim);
    poly.b.resize(0);
    poly.lower = VectorXd::Constant(dim, -1.0);
    poly.upper = VectorXd::Constant(dim, 1.0);
    return poly;
  }
  const AffineChart ch = affine_chart(sc);
  poly.A = -ch.map;
  poly.b = ch.offset;
  const bool probability_coords = sc.family() == Family::Multipartite || sc.chart() == Chart::Probability;
  poly.lower = VectorXd::Constant(dim, probability_coords ? 0.0 : -1.0);
  poly.upper = VectorXd::Constant(dim, 1.0);
  return poly;
}

}  // namespace bellgeo
