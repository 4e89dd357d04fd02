#include "bellgeo/io.hpp"

#include "bellgeo/cycle_geometry.hpp"
#include "bellgeo/errors.hpp"

#include <charconv>
#include <istream>
#include <limits>
#include <map>
#include <ostream>
#include <sstream>

namespace bellgeo {

namespace {

using Eigen::Index;
using Eigen::MatrixXd;
using Eigen::VectorXd;

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream is(s);
  while (std::getline(is, cur, sep)) out.push_back(cur);
  if (!s.empty() && s.back() == sep) out.emplace_back();
  return out;
}

double parse_double(const std::string& s) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    throw InvalidArgument("not a number: '" + s + "'");
  }
  if (used != s.size()) throw InvalidArgument("not a number: '" + s + "'");
  return v;
}

long long parse_int(const std::string& s) {
  long long v = 0;
  const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size()) throw InvalidArgument("not an integer: '" + s + "'");
  return v;
}

std::string strip_comment(const std::string& line) {
  std::size_t i = 0;
  while (i < line.size() && (line[i] == '#' || line[i] == ' ')) ++i;
  return line.substr(i);
}

// Reads comment lines and the column header; returns the comment bodies.
std::vector<std::string> read_preamble(std::istream& is, const std::string& expected_header) {
  std::vector<std::string> comments;
  std::string line;
  while (std::getline(is, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line[0] == '#') {
      comments.push_back(strip_comment(line));
      continue;
    }
    if (!expected_header.empty() && line.rfind(expected_header, 0) != 0)
      throw InvalidArgument("expected header '" + expected_header + "', got '" + line + "'");
    return comments;
  }
  throw InvalidArgument("missing header '" + expected_header + "'");
}

std::vector<std::vector<std::string>> read_rows(std::istream& is) {
  std::vector<std::vector<std::string>> rows;
  std::string line;
  while (std::getline(is, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    rows.push_back(split(line, ','));
  }
  return rows;
}

Scenario find_scenario(const std::vector<std::string>& comments) {
  for (const auto& c : comments)
    if (c.rfind("scenario=", 0) == 0) return parse_scenario_descriptor(c);
  throw InvalidArgument("missing '# scenario=...' header");
}

std::string find_spec_json(const std::vector<std::string>& comments) {
  for (const auto& c : comments)
    if (c.rfind("spec=", 0) == 0) return c.substr(5);
  throw InvalidArgument("missing '# spec=...' header");
}

}  // namespace

std::string format_double(double x) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

std::string scenario_descriptor(const Scenario& sc) {
  std::ostringstream os;
  os << "scenario=";
  switch (sc.family()) {
    case Family::Bipartite:
      if (sc.chart() == Chart::Probability) os << "22d m=2 d=" << sc.outcomes();
      else os << "2m2 m=" << sc.settings() << " d=" << sc.outcomes();
      break;
    case Family::Multipartite: os << "N22 N=" << sc.parties() << " d=2"; break;
    case Family::Cycle: os << "cycle n=" << sc.settings() << " d=2"; break;
  }
  os << " framework=" << to_string(sc.framework());
  return os.str();
}

Scenario parse_scenario_descriptor(const std::string& line) {
  std::map<std::string, std::string> kv;
  std::istringstream is(strip_comment(line));
  std::string tok;
  while (is >> tok) {
    const auto eq = tok.find('=');
    if (eq == std::string::npos) throw InvalidArgument("malformed scenario field '" + tok + "'");
    kv[tok.substr(0, eq)] = tok.substr(eq + 1);
  }
  auto get = [&](const std::string& k) -> int {
    const auto it = kv.find(k);
    if (it == kv.end()) throw InvalidArgument("scenario header lacks '" + k + "'");
    return static_cast<int>(parse_int(it->second));
  };
  for (const auto& [k, v] : kv)
    if (k != "scenario" && k != "m" && k != "d" && k != "N" && k != "n" && k != "framework")
      throw InvalidArgument("unknown scenario field '" + k + "'");
  if (!kv.count("scenario")) throw InvalidArgument("scenario header lacks 'scenario'");
  const ScenarioKind kind = parse_scenario_kind(kv["scenario"]);
  const Framework fw = kv.count("framework") ? parse_framework(kv["framework"]) : Framework::Complete;
  switch (kind) {
    case ScenarioKind::Bipartite: return Scenario::bipartite(get("m"), kv.count("d") ? get("d") : 2, fw);
    case ScenarioKind::TwoTwoD: return Scenario::two_two_d(get("d"), fw);
    case ScenarioKind::Multipartite: return Scenario::multipartite(get("N"), fw);
    case ScenarioKind::Cycle: return Scenario::cycle(get("n"), fw);
  }
  throw InvalidArgument("unknown scenario kind");
}

void write_behavior_csv(std::ostream& os, const Behavior& b) {
  os << "# " << scenario_descriptor(b.scenario) << '\n' << "context_rank,outcome_rank,probability\n";
  const std::int64_t T = b.scenario.outcome_tuples();
  for (std::int64_t c = 0; c < b.scenario.context_count(); ++c)
    for (std::int64_t o = 0; o < T; ++o) os << c << ',' << o << ',' << format_double(b(c, o)) << '\n';
}

Behavior read_behavior_csv(std::istream& is) {
  const auto comments = read_preamble(is, "context_rank,outcome_rank,probability");
  Behavior b{find_scenario(comments), {}};
  const std::int64_t T = b.scenario.outcome_tuples();
  b.table = VectorXd::Constant(b.scenario.table_size(), std::numeric_limits<double>::quiet_NaN());
  for (const auto& row : read_rows(is)) {
    if (row.size() != 3) throw InvalidArgument("behavior rows need 3 fields");
    const long long c = parse_int(row[0]);
    const long long o = parse_int(row[1]);
    if (c < 0 || c >= b.scenario.context_count() || o < 0 || o >= T)
      throw InvalidArgument("behavior row index out of range");
    b.table(c * T + o) = parse_double(row[2]);
  }
  if (!b.table.allFinite()) throw InvalidArgument("behavior file is missing entries");
  return b;
}

void write_fullcorr_csv(std::ostream& os, const FullCorrObject& f) {
  os << "# " << scenario_descriptor(f.scenario) << '\n' << "context_rank,value\n";
  for (Index i = 0; i < f.values.size(); ++i) os << i << ',' << format_double(f.values(i)) << '\n';
}

void write_coords_csv(std::ostream& os, const CoordVector& c) {
  os << "# " << scenario_descriptor(c.scenario) << '\n' << "coord_index,value\n";
  for (Index i = 0; i < c.coords.size(); ++i) os << i << ',' << format_double(c.coords(i)) << '\n';
}

CoordVector read_coords_csv(std::istream& is) {
  const auto comments = read_preamble(is, "coord_index,value");
  CoordVector c{find_scenario(comments), {}};
  c.coords = VectorXd::Constant(dimension(c.scenario), std::numeric_limits<double>::quiet_NaN());
  for (const auto& row : read_rows(is)) {
    if (row.size() != 2) throw InvalidArgument("coordinate rows need 2 fields");
    const long long i = parse_int(row[0]);
    if (i < 0 || i >= c.coords.size()) throw InvalidArgument("coordinate index out of range");
    c.coords(i) = parse_double(row[1]);
  }
  if (!c.coords.allFinite()) throw InvalidArgument("coordinate file is missing entries");
  return c;
}

void write_polytope_csv(std::ostream& os, const PolytopeH& p) {
  os << "# rows=" << p.A.rows() << " dim=" << p.dim() << '\n' << "row,col,value\n";
  for (Index r = 0; r < p.A.rows(); ++r)
    for (Index c = 0; c < p.A.cols(); ++c)
      if (p.A(r, c) != 0.0) os << r << ',' << c << ',' << format_double(p.A(r, c)) << '\n';
  os << "row,bound\n";
  for (Index r = 0; r < p.b.size(); ++r) os << r << ',' << format_double(p.b(r)) << '\n';
  os << "coord,lower,upper\n";
  for (Index i = 0; i < p.dim(); ++i)
    os << i << ',' << format_double(p.lower(i)) << ',' << format_double(p.upper(i)) << '\n';
}

void write_samples_csv(std::ostream& os, const ExperimentSpec& spec, const MatrixXd& samples) {
  os << "# spec=" << spec.to_json() << '\n' << "sample_index";
  for (Index i = 0; i < samples.rows(); ++i) os << ",coord_" << i;
  os << '\n';
  for (Index k = 0; k < samples.cols(); ++k) {
    os << k;
    for (Index i = 0; i < samples.rows(); ++i) os << ',' << format_double(samples(i, k));
    os << '\n';
  }
}

MatrixXd read_samples_csv(std::istream& is, ExperimentSpec* spec) {
  const auto comments = read_preamble(is, "sample_index");
  if (spec) *spec = ExperimentSpec::from_json(find_spec_json(comments));
  const auto rows = read_rows(is);
  if (rows.empty()) return MatrixXd();
  const Index dim = static_cast<Index>(rows.front().size()) - 1;
  MatrixXd out(dim, static_cast<Index>(rows.size()));
  for (std::size_t k = 0; k < rows.size(); ++k) {
    if (static_cast<Index>(rows[k].size()) != dim + 1) throw InvalidArgument("ragged sample row");
    for (Index i = 0; i < dim; ++i) out(i, static_cast<Index>(k)) = parse_double(rows[k][static_cast<std::size_t>(i + 1)]);
  }
  return out;
}

void write_distance_csv(std::ostream& os, const ExperimentSpec& spec, const VectorXd& nl) {
  os << "# " << scenario_descriptor(spec.scenario()) << " eps=" << format_double(spec.eps) << " seed=" << spec.seed
     << '\n'
     << "# spec=" << spec.to_json() << '\n'
     << "sample_index,nl\n";
  for (Index k = 0; k < nl.size(); ++k) os << k << ',' << format_double(nl(k)) << '\n';
}

void write_histogram_csv(std::ostream& os, const Histogram& h) {
  os << "# spec=" << h.spec.to_json() << '\n'
     << "# total=" << h.total << " local_count=" << h.local_count << " mode_bin=" << h.mode_bin
     << " clamped=" << h.clamped << '\n'
     << "bin,lower,upper,count\n";
  for (std::size_t b = 0; b < h.counts.size(); ++b) {
    const Index i = static_cast<Index>(b);
    os << b << ',' << format_double(h.edges(i)) << ',' << format_double(h.edges(i + 1)) << ',' << h.counts[b]
       << '\n';
  }
}

void write_volume_csv(std::ostream& os, const std::vector<VolumeReport>& reports) {
  os << "scenario,size,framework,method,n_samples,local_count,local_fraction,ns_acceptance\n";
  for (const auto& r : reports) {
    const ExperimentSpec& s = r.spec;
    int size = s.m;
    if (s.kind == ScenarioKind::Multipartite) size = s.N;
    else if (s.kind == ScenarioKind::Cycle) size = s.n;
    else if (s.kind == ScenarioKind::TwoTwoD) size = s.d;
    os << to_string(s.kind) << ',' << size << ',' << to_string(s.framework) << ',' << to_string(s.method) << ','
       << r.n_samples << ',' << r.local_count << ',' << format_double(r.local_fraction) << ','
       << (r.ns_acceptance ? format_double(*r.ns_acceptance) : std::string()) << '\n';
  }
}

void write_norm_stats_csv(std::ostream& os, const std::vector<NormStats>& stats) {
  os << "m,n_samples,frac_pi_le_1,frac_gamma2_le_1,median_ratio,mean_flatness\n";
  for (const auto& s : stats)
    os << s.m << ',' << s.n_samples << ',' << format_double(s.frac_pi_le_1) << ','
       << format_double(s.frac_gamma2_le_1) << ',' << format_double(s.median_ratio) << ','
       << format_double(s.mean_flatness) << '\n';
}

void write_norm_samples_csv(std::ostream& os, const NormStats& stats) {
  os << "# m=" << stats.m << '\n' << "sample_index,pi,gamma2,ratio,flatness\n";
  for (Index k = 0; k < stats.pi.size(); ++k)
    os << k << ',' << format_double(stats.pi(k)) << ',' << format_double(stats.gamma2(k)) << ','
       << format_double(stats.ratio(k)) << ',' << format_double(stats.flatness(k)) << '\n';
}

void write_cycle_analytic_csv(std::ostream& os, int n_lo, int n_hi) {
  os << "n,pyramid_volume,local_ratio\n";
  for (int n = n_lo; n <= n_hi; ++n)
    os << n << ',' << format_double(pyramid_volume(n)) << ',' << format_double(local_volume_ratio(n)) << '\n';
}

}  // namespace bellgeo
