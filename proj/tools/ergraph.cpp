// ergraph: command-line front end for the ergraph library.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ergraph/acceptance.hpp"
#include "ergraph/graph.hpp"
#include "ergraph/json_io.hpp"
#include "ergraph/montecarlo.hpp"
#include "ergraph/oracle.hpp"
#include "ergraph/sampler.hpp"
#include "ergraph/theory.hpp"
#include "ergraph/version.hpp"

namespace {

using ergraph::io::format_double;
using ergraph::io::json;

constexpr int kExitOk = 0;
constexpr int kExitBoundFailure = 1;
constexpr int kExitUsage = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw UsageError(path + ": " + e.what());
  }
}

/// Machine output goes to --out when given, stdout otherwise.
class Output {
 public:
  explicit Output(const std::string& path) {
    if (!path.empty()) {
      file_.open(path);
      if (!file_) throw UsageError("cannot write " + path);
    }
  }
  std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }

 private:
  std::ofstream file_;
};

void write_file(const std::string& path, const std::function<void(std::ostream&)>& fn) {
  std::ofstream out(path);
  if (!out) throw UsageError("cannot write " + path);
  fn(out);
}

/// --seed, then ERGRAPH_SEED, then `fallback`.
std::uint64_t resolve_seed(const std::optional<std::uint64_t>& flag, std::uint64_t fallback) {
  if (flag) return *flag;
  if (const char* env = std::getenv("ERGRAPH_SEED"); env && *env) {
    try {
      std::size_t used = 0;
      const auto v = std::stoull(env, &used, 0);
      if (used != std::string(env).size()) throw std::invalid_argument("trailing characters");
      return v;
    } catch (const std::exception&) {
      throw UsageError(std::string("ERGRAPH_SEED is not an unsigned integer: ") + env);
    }
  }
  return fallback;
}

// Model selection shared by `sample` and `experiment`.
struct ModelFlags {
  std::optional<double> C;
  std::string kind;
  std::optional<double> alpha_coef;
  std::string table;

  void add(CLI::App* app) {
    app->add_option("--C", C, "mean-degree parameter C");
    app->add_option("--model", kind, "homogeneous | two_class | custom_table")
        ->check(CLI::IsMember({"homogeneous", "two_class", "custom_table"}));
    app->add_option("--alpha-coef", alpha_coef, "alpha_n = coef / sqrt(n) (two_class)");
    app->add_option("--table", table, "probability table JSON (custom_table)");
  }
  bool any() const { return C || !kind.empty() || alpha_coef || !table.empty(); }

  /// Builds the model, starting from `base` for fields not given.
  std::optional<ergraph::EdgeProbModel> resolve(const std::optional<json>& base) const {
    if (!any()) return std::nullopt;
    json m = base.value_or(json{{"kind", "homogeneous"}, {"C", 2.0}});
    if (!kind.empty() && kind != m.value("kind", "")) {
      m = json{{"kind", kind}};
      if (base && base->contains("C")) m["C"] = base->at("C");
    }
    if (!table.empty()) {
      m["kind"] = "custom_table";
      m["table"] = read_json_file(table);
    }
    if (C) m["C"] = *C;
    if (alpha_coef) m["alpha"] = json{{"kind", "inverse_sqrt"}, {"coef", *alpha_coef}};
    if (!m.contains("C") && m.value("kind", "") != "custom_table") m["C"] = 2.0;
    return ergraph::io::model_from_json(m);
  }
};

// ---------------------------------------------------------------------------

struct TheoryCmd {
  std::vector<double> C;
  std::string grid;
  double tol = 1e-10;
  std::string format = "csv";
  std::string out;

  void add(CLI::App& app) {
    auto* sub = app.add_subcommand("theory", "q(C) by series and fixed point, delta(C), C0 residual");
    sub->add_option("--C", C, "values of C (repeatable)");
    sub->add_option("--grid", grid, "lo:hi:step grid of C values");
    sub->add_option("--tol", tol, "series truncation tolerance")->check(CLI::PositiveNumber);
    sub->add_option("--format", format)->check(CLI::IsMember({"csv", "json"}));
    sub->add_option("--out", out, "output file (default stdout)");
    sub->callback([this] { code = run(); });
  }

  int run() {
    std::vector<double> values = C;
    if (!grid.empty()) {
      double lo = 0, hi = 0, step = 0;
      char c1 = 0, c2 = 0;
      std::istringstream is(grid);
      if (!(is >> lo >> c1 >> hi >> c2 >> step) || c1 != ':' || c2 != ':' || !(step > 0) || hi < lo) {
        throw UsageError("--grid expects lo:hi:step with step > 0");
      }
      const auto count = static_cast<long>(std::floor((hi - lo) / step + 1e-9));
      for (long k = 0; k <= count; ++k) values.push_back(lo + static_cast<double>(k) * step);
    }
    if (values.empty()) values.push_back(2.0);
    Output o(out);
    json rows = json::array();
    if (format == "csv") o.stream() << "C,q_series,q_fixed_point,delta,C0_residual\n";
    for (double c : values) {
      const auto s = ergraph::theory::q_series(c, tol);
      const double fp = ergraph::theory::q_fixed_point(c, tol);
      const double d = ergraph::theory::delta(c);
      const double res = ergraph::theory::c0_residual(c);
      if (!s.converged) std::cerr << "note: series at C=" << c << " stopped at tail bound " << s.tail_bound << '\n';
      if (format == "csv") {
        o.stream() << format_double(c) << ',' << format_double(s.value) << ',' << format_double(fp) << ','
                   << format_double(d) << ',' << format_double(res) << '\n';
      } else {
        rows.push_back({{"C", c},
                        {"q_series", s.value},
                        {"q_fixed_point", fp},
                        {"delta", d},
                        {"C0_residual", res},
                        {"terms_used", s.terms_used},
                        {"tail_bound", s.tail_bound},
                        {"converged", s.converged}});
      }
    }
    if (format == "json") {
      o.stream() << json{{"version", ergraph::kVersion}, {"tol", tol}, {"rows", rows}}.dump(2) << '\n';
    }
    return kExitOk;
  }

  int code = kExitOk;
};

struct SampleCmd {
  ModelFlags model;
  std::uint64_t n = 1000;
  std::optional<std::uint64_t> seed;
  std::uint64_t stream = 0;
  std::string out;

  void add(CLI::App& app) {
    auto* sub = app.add_subcommand("sample", "draw one graph and write it as an edge list");
    model.add(sub);
    sub->add_option("--n", n, "number of vertices")->check(CLI::Range(std::uint64_t{2}, std::uint64_t{4294967295}));
    sub->add_option("--seed", seed, "master seed (fallback: ERGRAPH_SEED)");
    sub->add_option("--stream", stream, "substream index");
    sub->add_option("--out", out, "output file (default stdout)");
    sub->callback([this] { code = run(); });
  }

  int run() {
    const auto m = model.any() ? *model.resolve(std::nullopt) : ergraph::EdgeProbModel::homogeneous(2.0);
    const std::uint64_t s = resolve_seed(seed, 1);
    const auto g = ergraph::sample_graph(m, n, ergraph::SeedSpec{s, stream});
    Output o(out);
    ergraph::write_edge_list(o.stream(), g, s, stream);
    std::cerr << "sampled n=" << n << " m=" << g.edge_count() << " seed=" << s << " stream=" << stream << '\n';
    return kExitOk;
  }

  int code = kExitOk;
};

struct OracleCmd {
  std::string table;
  std::uint32_t vertex = 1;
  bool allow_n7 = false;
  std::string format = "csv";
  std::string out;

  void add(CLI::App& app) {
    auto* sub = app.add_subcommand("oracle", "exact component-size law by enumerating all edge configurations");
    sub->add_option("--table", table, "probability table JSON")->required();
    sub->add_option("--vertex", vertex, "vertex (1-based)")->check(CLI::PositiveNumber);
    sub->add_flag("--allow-n7", allow_n7, "permit n = 7 (2^21 configurations)");
    sub->add_option("--format", format)->check(CLI::IsMember({"csv", "json"}));
    sub->add_option("--out", out, "output file (default stdout)");
    sub->callback([this] { code = run(); });
  }

  int run() {
    const auto t = ergraph::io::table_from_json(read_json_file(table));
    if (vertex > t.n()) throw UsageError("--vertex exceeds n");
    const auto law = ergraph::oracle::exact_component_law(t, vertex - 1, ergraph::oracle::EnumerationOrder::kBinary,
                                                          allow_n7);
    Output o(out);
    if (format == "csv") {
      o.stream() << "r,prob\n";
      for (std::size_t r = 0; r < law.size(); ++r) o.stream() << (r + 1) << ',' << format_double(law[r]) << '\n';
    } else {
      json rows = json::array();
      for (std::size_t r = 0; r < law.size(); ++r) rows.push_back({{"r", r + 1}, {"prob", law[r]}});
      o.stream() << json{{"n", t.n()}, {"vertex", vertex}, {"law", rows}}.dump(2) << '\n';
    }
    return kExitOk;
  }

  int code = kExitOk;
};

struct ExperimentCmd {
  std::string config;
  ModelFlags model;
  std::optional<std::uint64_t> n, trials, seed, r_max, t_max;
  std::optional<double> epsilon, gamma, M, omega;
  std::optional<unsigned> threads;
  std::vector<std::string> stats;
  bool exact_ci = false;
  std::string out, census, flags, histogram;
  std::string format = "json";

  void add(CLI::App& app) {
    auto* sub = app.add_subcommand("experiment", "Monte Carlo experiment; flags override the config file");
    sub->add_option("--config", config, "ExperimentConfig JSON");
    model.add(sub);
    sub->add_option("--n", n, "number of vertices");
    sub->add_option("--trials", trials, "number of trials");
    sub->add_option("--epsilon", epsilon, "giant threshold fraction");
    sub->add_option("--gamma", gamma, "giant-size tolerance");
    sub->add_option("--M", M, "small-component constant");
    sub->add_option("--omega", omega, "bound slack omega");
    sub->add_option("--r-max", r_max, "largest r for the component law");
    sub->add_option("--t-max", t_max, "largest BFS layer");
    sub->add_option("--seed", seed, "master seed (fallback: ERGRAPH_SEED)");
    sub->add_option("--threads", threads, "worker threads (default: all cores)");
    sub->add_option("--stats", stats, "events, pmf, bounds, layers")
        ->check(CLI::IsMember({"events", "pmf", "bounds", "layers"}));
    sub->add_flag("--exact-ci", exact_ci, "Clopper-Pearson intervals for frequencies");
    sub->add_option("--out", out, "summary output file (default stdout)");
    sub->add_option("--census", census, "write per-trial component census CSV");
    sub->add_option("--flags", flags, "write per-trial event flags CSV");
    sub->add_option("--histogram", histogram, "write size histogram CSV");
    sub->add_option("--format", format)->check(CLI::IsMember({"csv", "json"}));
    sub->callback([this] { code = run(); });
  }

  ergraph::mc::ExperimentConfig resolve() const {
    ergraph::mc::ExperimentConfig cfg;
    std::optional<json> base_model;
    bool config_seed = false;
    if (!config.empty()) {
      const json j = read_json_file(config);
      cfg = ergraph::io::config_from_json(j);
      if (j.contains("model")) base_model = j.at("model");
      config_seed = j.contains("seed");
    }
    if (auto m = model.resolve(base_model)) cfg.model = *m;
    if (n) cfg.n = *n;
    if (trials) cfg.trials = *trials;
    if (epsilon) cfg.epsilon = *epsilon;
    if (gamma) cfg.gamma = *gamma;
    if (M) cfg.M = *M;
    if (omega) cfg.omega = *omega;
    if (r_max) cfg.r_max = *r_max;
    if (t_max) cfg.t_max = *t_max;
    if (threads) cfg.threads = *threads;
    if (!stats.empty()) cfg.which_stats = {stats.begin(), stats.end()};
    if (exact_ci) cfg.exact_ci = true;
    if (!census.empty() || !flags.empty()) cfg.keep_trials = true;
    if (seed || !config_seed) cfg.seed = resolve_seed(seed, 1);
    cfg.validate();
    return cfg;
  }

  int run() {
    const auto cfg = resolve();
    std::cerr << "experiment: n=" << cfg.n << " trials=" << cfg.trials << " seed=" << cfg.seed << '\n';
    const auto summary = ergraph::mc::run(cfg);
    std::cerr << "events done in " << summary.metadata.wall_time_s << " s\n";

    std::optional<ergraph::mc::PmfEstimate> pmf;
    std::optional<ergraph::mc::BoundReport> bounds;
    std::optional<ergraph::mc::LayerReport> layers;
    if (cfg.which_stats.contains("pmf")) pmf = ergraph::mc::estimate_pmf(cfg, cfg.r_max);
    if (cfg.which_stats.contains("bounds")) {
      ergraph::theory::TheoryParams p;
      p.omega = cfg.omega;
      bounds = ergraph::mc::bound_check(cfg, p, 1, cfg.r_max);
    }
    if (cfg.which_stats.contains("layers")) layers = ergraph::mc::layer_check(cfg, cfg.t_max);

    Output o(out);
    if (format == "json") {
      json j = ergraph::io::summary_to_json(summary);
      if (pmf) j["pmf"] = ergraph::io::pmf_to_json(*pmf);
      if (bounds) j["bounds"] = ergraph::io::bound_report_to_json(*bounds);
      if (layers) j["layers"] = ergraph::io::layer_report_to_json(*layers);
      o.stream() << j.dump(2) << '\n';
    } else {
      ergraph::io::write_statistics_csv(o.stream(), summary.stats);
      // Further tables follow, each after a blank line.
      if (pmf) ergraph::io::write_pmf_csv(o.stream() << '\n', *pmf);
      if (bounds) ergraph::io::write_bounds_csv(o.stream() << '\n', *bounds);
      if (layers) ergraph::io::write_layers_csv(o.stream() << '\n', *layers);
      std::cerr << "metadata: " << ergraph::io::metadata_to_json(summary.metadata, ergraph::io::config_to_json(cfg)).dump()
                << '\n';
    }
    if (!census.empty()) write_file(census, [&](std::ostream& os) { ergraph::io::write_census_csv(os, summary.trials); });
    if (!flags.empty()) write_file(flags, [&](std::ostream& os) { ergraph::io::write_flags_csv(os, summary.trials); });
    if (!histogram.empty()) {
      write_file(histogram, [&](std::ostream& os) { ergraph::io::write_histogram_csv(os, summary.histogram); });
    }

    bool failed = false;
    if (bounds) {
      std::cerr << "bounds: " << bounds->failures << " failures, " << bounds->warnings << " warnings\n";
      failed = failed || bounds->failures > 0;
    }
    if (layers) {
      std::cerr << "layers: " << (layers->all_ok ? "ok" : "violated") << '\n';
      failed = failed || !layers->all_ok;
    }
    return failed ? kExitBoundFailure : kExitOk;
  }

  int code = kExitOk;
};

struct CouplingCmd {
  std::uint64_t n = 1024;
  std::uint64_t trials = 1000;
  std::optional<std::uint64_t> seed;
  double C = 2.0;
  double alpha_coef = 16.0;
  unsigned threads = 0;
  bool exact_ci = false;
  bool swap_classes = false;
  std::string format = "json";
  std::string out;

  void add(CLI::App& app) {
    auto* sub = app.add_subcommand("coupling", "two-class coupling example: R_dif, max degree, sandwich window");
    sub->add_option("--n", n)->check(CLI::Range(std::uint64_t{2}, std::uint64_t{4294967295}));
    sub->add_option("--trials", trials)->check(CLI::PositiveNumber);
    sub->add_option("--seed", seed, "master seed (fallback: ERGRAPH_SEED)");
    sub->add_option("--C", C)->check(CLI::PositiveNumber);
    sub->add_option("--alpha-coef", alpha_coef, "alpha_n = coef / sqrt(n)")->check(CLI::NonNegativeNumber);
    sub->add_option("--threads", threads);
    sub->add_flag("--exact-ci", exact_ci);
    sub->add_flag("--swap-classes", swap_classes, "reduce all but floor(n^2/8) edges");
    sub->add_option("--format", format)->check(CLI::IsMember({"csv", "json"}));
    sub->add_option("--out", out);
    sub->callback([this] { code = run(); });
  }

  int run() {
    const std::uint64_t s = resolve_seed(seed, 1);
    const auto rep = ergraph::mc::coupling_experiment(n, trials, s, C, threads, alpha_coef, exact_ci, swap_classes);
    Output o(out);
    if (format == "json") {
      json j = ergraph::io::coupling_to_json(rep);
      j["seed"] = s;
      j["version"] = ergraph::kVersion;
      o.stream() << j.dump(2) << '\n';
    } else {
      o.stream() << "quantity,value,ci_lo,ci_hi\n";
      const auto row = [&](const char* name, const ergraph::Statistic& st) {
        o.stream() << name << ',' << format_double(st.mean) << ',' << format_double(st.ci_lo) << ','
                   << format_double(st.ci_hi) << '\n';
      };
      row("R_dif", rep.dif);
      row("R_dif_in_window", rep.dif_in_window);
      row("max_degree", rep.max_degree);
      row("max_degree_ok", rep.max_degree_ok);
      row("sandwich", rep.sandwich);
      o.stream() << "expected_R_dif," << format_double(rep.expected_dif) << ",,\n";
      o.stream() << "R_dif_guarantee," << format_double(rep.dif_guarantee) << ",,\n";
    }
    const bool ok = rep.coupling_monotone && rep.dif_in_window.mean >= rep.dif_guarantee;
    std::cerr << "coupling: R_dif in window " << rep.dif_in_window.mean << " (guarantee " << rep.dif_guarantee
              << ")\n";
    return ok ? kExitOk : kExitBoundFailure;
  }

  int code = kExitOk;
};

struct VerifyCmd {
  std::vector<int> criteria;
  std::optional<std::uint64_t> seed;
  unsigned threads = 0;

  void add(CLI::App& app) {
    auto* sub = app.add_subcommand("verify", "run the acceptance suite, one PASS/FAIL line per criterion");
    sub->add_option("--criteria", criteria, "subset of criterion ids (default: all)")->check(CLI::Range(1, 12));
    sub->add_option("--seed", seed, "master seed (fallback: ERGRAPH_SEED)");
    sub->add_option("--threads", threads);
    sub->callback([this] { code = run(); });
  }

  int run() {
    ergraph::acceptance::Options opt;
    opt.seed = resolve_seed(seed, opt.seed);
    opt.threads = threads;
    opt.progress = &std::cerr;
    const int failures = ergraph::acceptance::run(std::cout, opt, criteria);
    return failures == 0 ? kExitOk : kExitBoundFailure;
  }

  int code = kExitOk;
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"ergraph: tree counting and phase transitions in inhomogeneous random graphs"};
  app.set_version_flag("--version", ergraph::kVersion);
  app.require_subcommand(1);
  TheoryCmd theory;
  SampleCmd sample;
  OracleCmd oracle;
  ExperimentCmd experiment;
  CouplingCmd coupling;
  VerifyCmd verify;
  theory.add(app);
  sample.add(app);
  oracle.add(app);
  experiment.add(app);
  coupling.add(app);
  verify.add(app);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitUsage;
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::logic_error& e) {
    // Domain and range errors: the inputs were rejected.
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  for (int code : {theory.code, sample.code, oracle.code, experiment.code, coupling.code, verify.code}) {
    if (code != kExitOk) return code;
  }
  return kExitOk;
}
