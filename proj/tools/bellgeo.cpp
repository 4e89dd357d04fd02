// bellgeo: sampling, locality and norm experiments on Bell scenarios.

#include "bellgeo/cycle_geometry.hpp"
#include "bellgeo/errors.hpp"
#include "bellgeo/experiments.hpp"
#include "bellgeo/io.hpp"
#include "bellgeo/local_distance.hpp"
#include "bellgeo/norms.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>

using namespace bellgeo;
using json = nlohmann::json;

namespace {

struct Flags {
  std::string config;
  std::string scenario = "2m2";
  int m = 2;
  int N = 2;
  int d = 2;
  int n = 2;
  std::string framework = "complete";
  std::string method = "gibbs";
  std::int64_t samples = 100000;
  std::uint64_t seed = 1;
  double eps = kLocalEps;
  int bins = 100;
  int threads = 1;
  std::int64_t burn_in = -1;
  std::int64_t thinning = -1;
  std::string out;
  bool as_json = false;
};

struct SpecOptions {
  CLI::Option* scenario = nullptr;
  CLI::Option* m = nullptr;
  CLI::Option* N = nullptr;
  CLI::Option* d = nullptr;
  CLI::Option* n = nullptr;
  CLI::Option* framework = nullptr;
  CLI::Option* method = nullptr;
  CLI::Option* samples = nullptr;
  CLI::Option* seed = nullptr;
  CLI::Option* eps = nullptr;
  CLI::Option* bins = nullptr;
  CLI::Option* threads = nullptr;
  CLI::Option* burn_in = nullptr;
  CLI::Option* thinning = nullptr;
};

SpecOptions add_spec_options(CLI::App* app, Flags& f) {
  SpecOptions o;
  app->add_option("--config", f.config, "JSON experiment config; explicit flags override it");
  o.scenario = app->add_option("--scenario", f.scenario, "2m2 | N22 | 22d | cycle");
  o.m = app->add_option("--m", f.m, "settings per party (2m2)");
  o.N = app->add_option("--N", f.N, "number of parties (N22)");
  o.d = app->add_option("--d", f.d, "outcomes per setting (22d)");
  o.n = app->add_option("--n", f.n, "cycle length");
  o.framework = app->add_option("--framework", f.framework, "complete | full");
  o.method = app->add_option("--method", f.method, "gibbs | reject | iid");
  o.samples = app->add_option("--samples", f.samples, "number of samples");
  o.seed = app->add_option("--seed", f.seed, "random seed");
  o.eps = app->add_option("--eps", f.eps, "locality threshold on NL");
  o.bins = app->add_option("--bins", f.bins, "histogram bins over [0, 0.5]");
  o.threads = app->add_option("--threads", f.threads, "worker threads for NL evaluation");
  o.burn_in = app->add_option("--burn-in", f.burn_in, "Gibbs burn-in steps (default 50 * dim)");
  o.thinning = app->add_option("--thinning", f.thinning, "Gibbs steps between samples (default dim)");
  app->add_option("--out", f.out, "output file (default stdout)");
  app->add_flag("--json", f.as_json, "machine-readable report");
  return o;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

ExperimentSpec build_spec(const Flags& f, const SpecOptions& o) {
  ExperimentSpec s = f.config.empty() ? ExperimentSpec{} : ExperimentSpec::from_json(slurp(f.config));
  const bool from_file = !f.config.empty();
  auto set = [&](CLI::Option* opt) { return !from_file || opt->count() > 0; };
  if (set(o.scenario)) s.kind = parse_scenario_kind(f.scenario);
  if (set(o.m)) s.m = f.m;
  if (set(o.N)) s.N = f.N;
  if (set(o.d)) s.d = f.d;
  if (set(o.n)) s.n = f.n;
  if (set(o.framework)) s.framework = parse_framework(f.framework);
  if (set(o.method)) s.method = parse_sampling_method(f.method);
  if (set(o.samples)) s.n_samples = f.samples;
  if (set(o.seed)) s.seed = f.seed;
  if (set(o.eps)) s.eps = f.eps;
  if (set(o.bins)) s.bins = f.bins;
  if (o.threads->count() > 0) s.threads = f.threads;
  if (o.burn_in->count() > 0) s.burn_in = f.burn_in;
  if (o.thinning->count() > 0) s.thinning = f.thinning;
  s.validate();
  return s;
}

// Writes to --out when given, stdout otherwise.
class Output {
 public:
  explicit Output(const std::string& path) {
    if (!path.empty()) {
      file_ = std::make_unique<std::ofstream>(path);
      if (!*file_) throw InvalidArgument("cannot write '" + path + "'");
    }
  }
  std::ostream& stream() { return file_ ? *file_ : std::cout; }

 private:
  std::unique_ptr<std::ofstream> file_;
};

json volume_json(const VolumeReport& r) {
  json j;
  j["spec"] = json::parse(r.spec.to_json());
  j["scenario"] = r.scenario;
  j["n_samples"] = r.n_samples;
  j["local_count"] = r.local_count;
  j["local_fraction"] = r.local_fraction;
  j["ns_acceptance"] = r.ns_acceptance ? json(*r.ns_acceptance) : json(nullptr);
  j["draws"] = r.draws;
  if (!r.warning.empty()) j["warning"] = r.warning;
  return j;
}

json histogram_json(const Histogram& h) {
  json j;
  j["spec"] = json::parse(h.spec.to_json());
  j["total"] = h.total;
  j["local_count"] = h.local_count;
  j["mode_bin"] = h.mode_bin;
  j["clamped"] = h.clamped;
  j["counts"] = h.counts;
  j["edges"] = std::vector<double>(h.edges.data(), h.edges.data() + h.edges.size());
  return j;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Sampling, locality and norm experiments on Bell scenarios"};
  app.require_subcommand(1);

  Flags f;
  std::string input;
  int n_max = 12;
  int m_max = 0;
  std::string dump;
  std::string table;
  double scale = 1.0;

  auto* sample_cmd = app.add_subcommand("sample", "draw uniform samples from the NS polytope");
  const SpecOptions sample_opts = add_spec_options(sample_cmd, f);

  auto* distance_cmd = app.add_subcommand("distance", "NL distance of samples to the local polytope");
  const SpecOptions distance_opts = add_spec_options(distance_cmd, f);
  distance_cmd->add_option("--in", input, "sample CSV written by 'sample' (drawn afresh otherwise)");

  auto* hist_cmd = app.add_subcommand("histogram", "histogram of NL over uniform samples");
  const SpecOptions hist_opts = add_spec_options(hist_cmd, f);

  auto* volume_cmd = app.add_subcommand("volume", "fraction of uniform samples that are local");
  const SpecOptions volume_opts = add_spec_options(volume_cmd, f);

  auto* norms_cmd = app.add_subcommand("norms", "pi and gamma_2 norms of uniform full-correlation matrices");
  const SpecOptions norms_opts = add_spec_options(norms_cmd, f);
  norms_cmd->add_option("--m-max", m_max, "run every m from --m up to this value");
  norms_cmd->add_option("--dump", dump, "per-sample CSV (single m only)");

  auto* cycle_cmd = app.add_subcommand("cycle-analytic", "closed-form cycle volumes");
  cycle_cmd->add_option("--n-max", n_max, "largest cycle length (<= 12)");
  cycle_cmd->add_option("--out", f.out, "output file (default stdout)");

  auto* repro_cmd = app.add_subcommand("reproduce", "rerun a volume table at desk scale");
  repro_cmd->add_option("--table", table, "I | II | III | IV | V | cycle-analytic")->required();
  repro_cmd->add_option("--seed", f.seed, "random seed");
  repro_cmd->add_option("--scale", scale, "multiplier on the default sample counts");
  repro_cmd->add_option("--threads", f.threads, "worker threads for NL evaluation");
  repro_cmd->add_flag("--json", f.as_json, "machine-readable report");
  repro_cmd->add_option("--out", f.out, "output file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (*sample_cmd) {
      const ExperimentSpec spec = build_spec(f, sample_opts);
      const SampleBatch batch = draw_samples(spec);
      if (!batch.warning.empty()) std::cerr << "warning: " << batch.warning << '\n';
      Output out(f.out);
      write_samples_csv(out.stream(), spec, batch.samples);
    } else if (*distance_cmd) {
      ExperimentSpec spec = build_spec(f, distance_opts);
      Eigen::MatrixXd samples;
      if (!input.empty()) {
        std::ifstream in(input);
        if (!in) throw InvalidArgument("cannot open '" + input + "'");
        ExperimentSpec from_file;
        samples = read_samples_csv(in, &from_file);
        from_file.eps = spec.eps;
        from_file.threads = spec.threads;
        spec = from_file;
      } else {
        samples = draw_samples(spec).samples;
      }
      const VertexBasis basis = local_vertex_basis(spec.scenario());
      const Eigen::VectorXd nl = nl_samples(samples, basis, spec.threads);
      Output out(f.out);
      write_distance_csv(out.stream(), spec, nl);
    } else if (*hist_cmd) {
      const ExperimentSpec spec = build_spec(f, hist_opts);
      Output out(f.out);
      if (spec.kind == ScenarioKind::TwoTwoD) {
        const TwoTwoDReport rep = run_22d(spec);
        if (f.as_json) {
          json j = histogram_json(rep.histogram);
          j["volume"] = volume_json(rep.volume);
          j["frac_nl_le_10eps"] = rep.frac_nl_le_10eps;
          j["frac_nl_le_100eps"] = rep.frac_nl_le_100eps;
          j["note"] = rep.note;
          out.stream() << j.dump(2) << '\n';
        } else {
          write_histogram_csv(out.stream(), rep.histogram);
        }
      } else {
        const Histogram h = run_histogram(spec);
        if (f.as_json) out.stream() << histogram_json(h).dump(2) << '\n';
        else write_histogram_csv(out.stream(), h);
      }
    } else if (*volume_cmd) {
      const ExperimentSpec spec = build_spec(f, volume_opts);
      Output out(f.out);
      if (spec.kind == ScenarioKind::TwoTwoD) {
        const TwoTwoDReport rep = run_22d(spec);
        if (f.as_json) {
          json j = volume_json(rep.volume);
          j["frac_nl_le_10eps"] = rep.frac_nl_le_10eps;
          j["frac_nl_le_100eps"] = rep.frac_nl_le_100eps;
          j["note"] = rep.note;
          out.stream() << j.dump(2) << '\n';
        } else {
          write_volume_csv(out.stream(), {rep.volume});
          std::cerr << "frac_nl_le_10eps=" << rep.frac_nl_le_10eps
                    << " frac_nl_le_100eps=" << rep.frac_nl_le_100eps << '\n'
                    << rep.note << '\n';
        }
      } else {
        const VolumeReport rep = run_volume(spec);
        if (!rep.warning.empty()) std::cerr << "warning: " << rep.warning << '\n';
        if (f.as_json) out.stream() << volume_json(rep).dump(2) << '\n';
        else write_volume_csv(out.stream(), {rep});
      }
    } else if (*norms_cmd) {
      const ExperimentSpec spec = build_spec(f, norms_opts);
      const int hi = m_max > 0 ? m_max : spec.m;
      std::vector<NormStats> stats;
      for (int m = spec.m; m <= hi; ++m) stats.push_back(norm_experiment(m, spec.n_samples, spec.sampler(), 1e-6, spec.threads));
      Output out(f.out);
      if (f.as_json) {
        json j = json::array();
        for (const auto& s : stats)
          j.push_back({{"m", s.m},
                       {"n_samples", s.n_samples},
                       {"frac_pi_le_1", s.frac_pi_le_1},
                       {"frac_gamma2_le_1", s.frac_gamma2_le_1},
                       {"median_ratio", s.median_ratio},
                       {"mean_flatness", s.mean_flatness},
                       {"frac_normalized_classical", s.frac_normalized_classical}});
        out.stream() << j.dump(2) << '\n';
      } else {
        write_norm_stats_csv(out.stream(), stats);
      }
      if (!dump.empty()) {
        if (stats.size() != 1) throw InvalidArgument("--dump needs a single m");
        Output d(dump);
        write_norm_samples_csv(d.stream(), stats.front());
      }
    } else if (*cycle_cmd) {
      if (n_max < 2 || n_max > 12) throw InvalidArgument("--n-max must lie in 2..12");
      Output out(f.out);
      write_cycle_analytic_csv(out.stream(), 2, n_max);
    } else if (*repro_cmd) {
      const ReproReport rep = reproduce(table, f.seed, scale, f.threads);
      Output out(f.out);
      if (f.as_json) {
        json rows = json::array();
        for (const auto& r : rep.rows)
          rows.push_back({{"row", r.label},
                          {"reference_percent", r.reference},
                          {"computed_percent", r.computed},
                          {"tolerance_pp", r.tolerance},
                          {"n_samples", r.n_samples},
                          {"pass", r.pass}});
        out.stream() << json{{"table", rep.table}, {"rows", rows}, {"pass", rep.pass()}}.dump(2) << '\n';
      } else {
        print_report(out.stream(), rep);
      }
    }
  } catch (const InvalidArgument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const InfeasiblePoint& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const NumericalFailure& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
