#pragma once

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <exception>
#include <map>
#include <mutex>
#include <optional>
#include <set>
#include <string>
#include <thread>
#include <tuple>
#include <vector>

#include "ergraph/components.hpp"
#include "ergraph/errors.hpp"
#include "ergraph/graph.hpp"
#include "ergraph/probmodel.hpp"
#include "ergraph/rng.hpp"
#include "ergraph/sampler.hpp"
#include "ergraph/stats.hpp"
#include "ergraph/theory.hpp"
#include "ergraph/version.hpp"

namespace ergraph::mc {

/// One Monte Carlo experiment: `trials` independent graphs from `model` on
/// n vertices, trial t drawn from stream (seed, t).
struct ExperimentConfig {
  EdgeProbModel model = EdgeProbModel::homogeneous(2.0);
  std::uint64_t n = 1000;
  std::uint64_t trials = 10;
  double epsilon = 0.1;
  double gamma = 0.05;
  double M = 10.0;
  std::uint64_t seed = 1;
  /// Subset of {"events", "pmf", "bounds", "layers"}.
  std::set<std::string> which_stats{"events"};
  /// Worker threads; 0 means one per hardware thread. Results do not depend
  /// on this value.
  unsigned threads = 0;
  bool exact_ci = false;
  bool keep_trials = false;  ///< keep per-trial census and flags
  // Used by the "pmf" / "bounds" / "layers" statistics.
  double omega = 0.05;
  std::uint64_t r_max = 20;
  std::uint64_t t_max = 25;

  void validate() const {
    if (trials < 1) throw domain_error("trials must be >= 1");
    if (n < 2) throw domain_error("n must be >= 2");
    if (!(epsilon > 0.0 && epsilon < 1.0)) throw domain_error("epsilon must be in (0,1)");
    if (!(gamma > 0.0 && gamma < 1.0)) throw domain_error("gamma must be in (0,1)");
    if (!(M > 0.0)) throw domain_error("M must be positive");
    static const std::set<std::string> known{"events", "pmf", "bounds", "layers"};
    for (const auto& s : which_stats) {
      if (!known.contains(s)) throw domain_error("unknown statistic '" + s + "'");
    }
  }
};

struct Metadata {
  std::string version{kVersion};
  std::uint64_t seed = 0;
  std::string rng{StreamRng::name()};
  unsigned threads = 1;
  double wall_time_s = 0.0;
};

inline unsigned resolve_threads(unsigned requested, std::uint64_t trials) {
  unsigned t = requested == 0 ? std::max(1u, std::thread::hardware_concurrency()) : requested;
  return static_cast<unsigned>(std::min<std::uint64_t>(t, trials));
}

/// Runs body(worker, trial) for trial = 0..trials-1 on `threads` workers.
/// Each trial index is handled exactly once; callers write into per-trial
/// slots and reduce afterwards in index order.
template <class Body>
void parallel_trials(std::uint64_t trials, unsigned threads, Body&& body) {
  if (threads <= 1) {
    for (std::uint64_t t = 0; t < trials; ++t) body(0u, t);
    return;
  }
  std::atomic<std::uint64_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (unsigned w = 0; w < threads; ++w) {
    pool.emplace_back([&, w] {
      try {
        for (std::uint64_t t = next++; t < trials; t = next++) body(w, t);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next = trials;
      }
    });
  }
  for (auto& th : pool) th.join();
  if (failure) std::rethrow_exception(failure);
}

/// Per-worker scratch for sampling one graph.
struct TrialScratch {
  std::vector<Edge> edges;
};

/// q(C) for the model's C, used for the giant-fraction events.
inline double giant_q(const EdgeProbModel& model) { return theory::q_fixed_point(model.C(), 1e-14); }

// ---------------------------------------------------------------------------
// run
// ---------------------------------------------------------------------------

struct TrialRecord {
  EventFlags flags;
  std::uint64_t edge_count = 0;
  std::vector<std::uint32_t> sizes;  ///< descending; only with keep_trials
};

struct ExperimentSummary {
  ExperimentConfig config;
  Metadata metadata;
  double qC = 1.0;
  std::map<std::string, Statistic> stats;
  /// size -> number of vertices (over all trials) in components of that size.
  std::map<std::uint32_t, std::uint64_t> histogram;
  std::vector<TrialRecord> trials;  ///< filled when config.keep_trials
};

inline ExperimentSummary run(const ExperimentConfig& config) {
  config.validate();
  const auto start = std::chrono::steady_clock::now();
  const ModelInstance inst(config.model, config.n);
  const unsigned threads = resolve_threads(config.threads, config.trials);
  const double qC = giant_q(config.model);
  const EventParams ep{config.M, config.gamma, config.epsilon, qC};

  struct Slot {
    EventFlags flags;
    std::uint64_t edges = 0;
    std::uint32_t largest = 0;
    std::uint32_t second = 0;
    std::uint64_t components = 0;
    std::vector<std::uint32_t> sizes;
  };
  std::vector<Slot> slots(config.trials);
  std::vector<TrialScratch> scratch(threads);
  parallel_trials(config.trials, threads, [&](unsigned w, std::uint64_t t) {
    auto& edges = scratch[w].edges;
    sample_edges(inst, SeedSpec{config.seed, t}, edges);
    const auto census = components(static_cast<std::uint32_t>(config.n), edges);
    Slot& s = slots[t];
    s.flags = event_flags(census, ep);
    s.edges = edges.size();
    s.largest = census.largest();
    s.second = census.sizes.size() > 1 ? census.sizes[1] : 0;
    s.components = census.sizes.size();
    s.sizes = census.sizes;
  });

  ExperimentSummary out;
  out.config = config;
  out.qC = qC;
  const double nd = static_cast<double>(config.n);
  std::vector<double> y, z, largest, second, comps, edge_count, giants;
  std::map<std::string, std::uint64_t> hits{{"H1", 0}, {"B", 0}, {"W", 0}, {"V", 0},
                                            {"H2", 0}, {"H3", 0}, {"one_giant", 0}};
  for (std::uint64_t t = 0; t < config.trials; ++t) {
    Slot& s = slots[t];
    y.push_back(static_cast<double>(s.flags.Y) / nd);
    z.push_back(static_cast<double>(s.flags.Z) / nd);
    largest.push_back(s.largest);
    second.push_back(s.second);
    comps.push_back(static_cast<double>(s.components));
    edge_count.push_back(static_cast<double>(s.edges));
    giants.push_back(static_cast<double>(s.flags.giant_count));
    hits["H1"] += s.flags.H1;
    hits["B"] += s.flags.B;
    hits["W"] += s.flags.W;
    hits["V"] += s.flags.V;
    hits["H2"] += s.flags.H2;
    hits["H3"] += s.flags.H3;
    hits["one_giant"] += s.flags.giant_count == 1;
    for (std::uint32_t size : s.sizes) out.histogram[size] += size;
    if (config.keep_trials) {
      out.trials.push_back(TrialRecord{s.flags, s.edges, std::move(s.sizes)});
    }
  }
  out.stats["Y_over_n"] = summarize(y);
  out.stats["Z_over_n"] = summarize(z);
  out.stats["largest"] = summarize(largest);
  out.stats["second_largest"] = summarize(second);
  out.stats["components"] = summarize(comps);
  out.stats["edges"] = summarize(edge_count);
  out.stats["giant_count"] = summarize(giants);
  for (const auto& [name, k] : hits) out.stats[name] = summarize_frequency(k, config.trials, config.exact_ci);

  out.metadata.seed = config.seed;
  out.metadata.threads = threads;
  out.metadata.wall_time_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return out;
}

// ---------------------------------------------------------------------------
// Component-size law
// ---------------------------------------------------------------------------

struct PmfPoint {
  std::uint64_t r = 0;
  Statistic freq;           ///< mean over trials of the per-trial fraction
  std::uint64_t count = 0;  ///< observations with #E_i = r over all trials
  /// Distinct components of size r behind `count` (count / r when pooled).
  std::uint64_t components = 0;
};

struct PmfEstimate {
  std::uint64_t n = 0;
  std::uint64_t trials = 0;
  bool vertex_one_only = false;
  std::vector<PmfPoint> points;  ///< r = 1..r_max
  /// Degree-zero vertices over all trials, counted from the edge list
  /// independently of the component census.
  std::uint64_t isolated_vertices = 0;
  /// Trials with a component of size in (M ln n, eps n].
  std::uint64_t midsize_hits = 0;
};

/// Estimates P(#E_i = r) for r = 1..r_max.
///
/// Pooled mode counts every vertex of every trial; the interval comes from
/// the spread of per-trial fractions, since vertices within one graph are
/// dependent. With `vertex_one_only` each trial contributes the single
/// indicator for vertex 1.
inline PmfEstimate estimate_pmf(const ExperimentConfig& config, std::uint64_t r_max, bool vertex_one_only = false) {
  config.validate();
  if (r_max < 1) throw domain_error("estimate_pmf: r_max must be >= 1");
  if (r_max > config.n) throw domain_error("estimate_pmf: r_max must not exceed n");
  const ModelInstance inst(config.model, config.n);
  const unsigned threads = resolve_threads(config.threads, config.trials);
  const auto nv = static_cast<std::uint32_t>(config.n);
  const double small_cap = config.M * std::log(static_cast<double>(config.n));
  const double giant_floor = config.epsilon * static_cast<double>(config.n);

  struct Slot {
    std::vector<std::uint64_t> counts;  // [r-1]
    std::uint64_t isolated = 0;
    bool midsize = false;
  };
  std::vector<Slot> slots(config.trials);
  std::vector<TrialScratch> scratch(threads);
  std::vector<std::vector<std::uint32_t>> degree(threads);
  parallel_trials(config.trials, threads, [&](unsigned w, std::uint64_t t) {
    auto& edges = scratch[w].edges;
    sample_edges(inst, SeedSpec{config.seed, t}, edges);
    Slot& s = slots[t];
    s.counts.assign(r_max, 0);
    auto& deg = degree[w];
    deg.assign(nv, 0);
    for (const Edge& e : edges) {
      ++deg[e.u];
      ++deg[e.v];
    }
    s.isolated = static_cast<std::uint64_t>(std::count(deg.begin(), deg.end(), 0u));
    const auto census = components(nv, edges);
    if (vertex_one_only) {
      const std::uint32_t r = census.component_size(0);
      if (r <= r_max) s.counts[r - 1] = 1;
    } else {
      for (std::uint32_t r : census.sizes) {
        if (r <= r_max) s.counts[r - 1] += r;
      }
    }
    for (std::uint32_t r : census.sizes) {
      if (r > small_cap && r <= giant_floor) s.midsize = true;
    }
  });

  PmfEstimate out;
  out.n = config.n;
  out.trials = config.trials;
  out.vertex_one_only = vertex_one_only;
  const double per_trial = vertex_one_only ? 1.0 : static_cast<double>(config.n);
  for (const Slot& s : slots) {
    out.isolated_vertices += s.isolated;
    out.midsize_hits += s.midsize;
  }
  std::vector<double> fractions(config.trials);
  for (std::uint64_t r = 1; r <= r_max; ++r) {
    PmfPoint pt;
    pt.r = r;
    for (std::uint64_t t = 0; t < config.trials; ++t) {
      fractions[t] = static_cast<double>(slots[t].counts[r - 1]) / per_trial;
      pt.count += slots[t].counts[r - 1];
    }
    pt.components = vertex_one_only ? pt.count : pt.count / r;
    if (vertex_one_only) {
      pt.freq = summarize_frequency(pt.count, config.trials, config.exact_ci);
    } else {
      pt.freq = summarize(fractions);
      if (config.trials == 1) {
        // No spread to measure: fall back to the binomial width on n vertices.
        const double p = pt.freq.mean;
        pt.freq.half_width = kZ95 * std::sqrt(p * (1.0 - p) / per_trial);
        pt.freq.ci_lo = p - pt.freq.half_width;
        pt.freq.ci_hi = p + pt.freq.half_width;
      }
    }
    out.points.push_back(pt);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Bound checks
// ---------------------------------------------------------------------------

enum class CheckStatus { kOk, kInsufficientData, kWarning, kFailure };

inline const char* to_string(CheckStatus s) {
  switch (s) {
    case CheckStatus::kOk:
      return "ok";
    case CheckStatus::kInsufficientData:
      return "insufficient";
    case CheckStatus::kWarning:
      return "warning";
    case CheckStatus::kFailure:
      return "failure";
  }
  return "?";
}

/// Below this n a violated asymptotic bound is reported as a warning.
inline constexpr std::uint64_t kHardCheckMinN = 100'000;

struct BoundRow {
  std::uint64_t r = 0;
  Statistic freq;
  std::uint64_t count = 0;
  std::uint64_t components = 0;
  double lower = 0.0;
  double upper = 0.0;
  CheckStatus status = CheckStatus::kOk;
};

struct MidsizeCheck {
  bool applicable = false;
  std::string reason;  ///< why not applicable
  Statistic freq;
  double bound = 0.0;
  CheckStatus status = CheckStatus::kOk;
};

struct BoundReport {
  theory::TheoryParams params;
  std::uint64_t n = 0;
  std::uint64_t trials = 0;
  std::vector<BoundRow> rows;
  MidsizeCheck midsize;
  std::uint64_t failures = 0;
  std::uint64_t warnings = 0;
};

/// Compares the empirical law of #E_i with the tree-counting sandwich
/// component_law_lower(r) <= P(#E_i = r) <= component_law_upper(r), and the frequency of
/// a mid-size component with midsize_bound. A row is ok when its whole
/// confidence interval lies inside the sandwich. Rows resting on fewer than
/// `min_count` observed components are not judged: the vertices of one
/// component are a single observation, and the normal interval needs several. Violations are failures for
/// n >= kHardCheckMinN and warnings below.
inline BoundReport bound_check(const ExperimentConfig& config, theory::TheoryParams params, std::uint64_t r_lo,
                               std::uint64_t r_hi, std::uint64_t min_count = 50) {
  params.C = config.model.C();
  params.epsilon = config.epsilon;
  params.M = config.M;
  params.gamma = config.gamma;
  params.validate();
  if (r_lo < 1 || r_hi < r_lo) throw domain_error("bound_check: bad r range");
  const double d0 = theory::delta_i(params, 0);
  if (!(d0 > 0.0)) throw vacuous_bound_error("bound_check: delta0 must be positive");

  const PmfEstimate pmf = estimate_pmf(config, r_hi);
  const CheckStatus violated = config.n >= kHardCheckMinN ? CheckStatus::kFailure : CheckStatus::kWarning;

  BoundReport rep;
  rep.params = params;
  rep.n = config.n;
  rep.trials = config.trials;
  for (std::uint64_t r = r_lo; r <= r_hi; ++r) {
    const PmfPoint& pt = pmf.points[r - 1];
    BoundRow row;
    row.r = r;
    row.freq = pt.freq;
    row.count = pt.count;
    row.components = pt.components;
    row.lower = theory::component_law_lower(params, r);
    row.upper = theory::component_law_upper(params, r);
    if (pt.components < min_count) {
      row.status = CheckStatus::kInsufficientData;
    } else if (pt.freq.ci_hi <= row.upper && pt.freq.ci_lo >= row.lower) {
      row.status = CheckStatus::kOk;
    } else {
      row.status = violated;
    }
    rep.failures += row.status == CheckStatus::kFailure;
    rep.warnings += row.status == CheckStatus::kWarning;
    rep.rows.push_back(row);
  }

  MidsizeCheck& mid = rep.midsize;
  mid.freq = summarize_frequency(pmf.midsize_hits, config.trials, config.exact_ci);
  try {
    mid.bound = theory::midsize_bound(params, config.n);
    mid.applicable = true;
  } catch (const std::exception& e) {
    mid.reason = e.what();
  }
  if (mid.applicable) {
    const double sigma = std::sqrt(mid.freq.mean * (1.0 - mid.freq.mean) / static_cast<double>(config.trials));
    mid.status = mid.freq.mean <= mid.bound + 3.0 * sigma ? CheckStatus::kOk : violated;
    rep.failures += mid.status == CheckStatus::kFailure;
    rep.warnings += mid.status == CheckStatus::kWarning;
  }
  return rep;
}

struct LayerRow {
  std::uint64_t t = 0;
  Statistic mean;    ///< of #N_t(source)
  Statistic second;  ///< of (#N_t(source))^2
  double mean_bound = 0.0;
  double second_bound = 0.0;
  bool ok = true;
};

struct LayerReport {
  double C_u = 0.0;
  std::uint64_t samples = 0;
  std::vector<LayerRow> rows;  ///< t = 1..t_max
  bool all_ok = true;
};

/// Compares BFS layer sizes from `sources_per_trial` sources per graph
/// (vertex 1 first, then evenly spaced vertices) with the subcritical layer
/// bounds: mean <= C_u^t + 3 se and second moment <= C_u^t/(1 - C_u) + 3 se.
inline LayerReport layer_check(const ExperimentConfig& config, std::uint64_t t_max,
                               std::uint64_t sources_per_trial = 1) {
  config.validate();
  if (t_max < 1) throw domain_error("layer_check: t_max must be >= 1");
  if (sources_per_trial < 1 || sources_per_trial > config.n) throw domain_error("layer_check: bad source count");
  const ModelInstance inst(config.model, config.n);
  const double C_u = inst.band().p_u * static_cast<double>(config.n);
  if (!(C_u < 1.0)) throw domain_error("layer_check: needs C + alpha_n < 1, got " + std::to_string(C_u));
  const unsigned threads = resolve_threads(config.threads, config.trials);
  const auto nv = static_cast<std::uint32_t>(config.n);

  // layers[t][s][k]: #N_k from source s of trial t (k = 1..t_max)
  std::vector<std::vector<std::vector<std::uint64_t>>> layers(config.trials);
  std::vector<TrialScratch> scratch(threads);
  parallel_trials(config.trials, threads, [&](unsigned w, std::uint64_t t) {
    auto& edges = scratch[w].edges;
    sample_edges(inst, SeedSpec{config.seed, t}, edges);
    const Graph g = Graph::from_colex_sorted(nv, edges);
    auto& mine = layers[t];
    for (std::uint64_t s = 0; s < sources_per_trial; ++s) {
      const auto src = static_cast<Vertex>(s * config.n / sources_per_trial);
      const BfsProfile prof = bfs_profile(g, src);
      std::vector<std::uint64_t> row(t_max, 0);
      for (std::uint64_t k = 1; k <= t_max && k < prof.layer_sizes.size(); ++k) row[k - 1] = prof.layer_sizes[k];
      mine.push_back(std::move(row));
    }
  });

  LayerReport rep;
  rep.C_u = C_u;
  rep.samples = config.trials * sources_per_trial;
  std::vector<double> x, x2;
  for (std::uint64_t k = 1; k <= t_max; ++k) {
    x.clear();
    x2.clear();
    for (const auto& trial : layers) {
      for (const auto& row : trial) {
        const double v = static_cast<double>(row[k - 1]);
        x.push_back(v);
        x2.push_back(v * v);
      }
    }
    LayerRow lr;
    lr.t = k;
    lr.mean = summarize(x);
    lr.second = summarize(x2);
    std::tie(lr.mean_bound, lr.second_bound) = theory::layer_moment_bounds(C_u, k);
    lr.ok = lr.mean.mean <= lr.mean_bound + 3.0 * lr.mean.std_error() &&
            lr.second.mean <= lr.second_bound + 3.0 * lr.second.std_error();
    rep.all_ok = rep.all_ok && lr.ok;
    rep.rows.push_back(lr);
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Coupling example
// ---------------------------------------------------------------------------

struct CouplingReport {
  std::uint64_t n = 0;
  std::uint64_t trials = 0;
  double C = 2.0;
  double alpha_n = 0.0;
  std::uint64_t reduced_count = 0;
  bool swapped_classes = false;
  /// Edges at C/n; only these can be in G but not in G-.
  std::uint64_t regular_count = 0;
  double expected_dif = 0.0;  ///< regular_count * alpha_n / n
  Statistic dif;              ///< R_dif
  double dif_window_lo = 0.0;  ///< sqrt(n)
  double dif_window_hi = 0.0;  ///< 3 sqrt(n)
  Statistic dif_in_window;
  double dif_guarantee = 0.0;  ///< 1 - 2/sqrt(n)
  double degree_cap = 0.0;     ///< 3 ln n
  Statistic max_degree;
  Statistic max_degree_ok;
  double sandwich_lo = 0.0;  ///< 2 sqrt(n) / (3 ln n)
  double sandwich_hi = 0.0;  ///< 6 sqrt(n)
  Statistic sandwich;        ///< some component of G inside the window
  bool coupling_monotone = true;
};

/// Two-class model with alpha_n = alpha_coef/sqrt(n): samples the coupled
/// G- subset of G subset of G+ and records R_dif, the maximum degree of G
/// and whether G has a component in the mid-size window.
///
/// By default floor(n^2/8) edges are reduced, so about 3n^2/8 edges sit at
/// C/n and E R_dif is about 6 sqrt(n) for alpha_coef = 16. `swap_classes`
/// reduces all but floor(n^2/8) edges instead, giving E R_dif near 2 sqrt(n).
inline CouplingReport coupling_experiment(std::uint64_t n, std::uint64_t trials, std::uint64_t seed, double C = 2.0,
                                          unsigned threads = 0, double alpha_coef = 16.0, bool exact_ci = false,
                                          bool swap_classes = false) {
  if (trials < 1) throw domain_error("coupling_experiment: trials must be >= 1");
  if (n < 2) throw domain_error("coupling_experiment: n must be >= 2");
  EdgeProbModel model = EdgeProbModel::two_class(C, AlphaSequence::inverse_sqrt(alpha_coef));
  if (swap_classes) {
    std::get<TwoClass>(model.variant).reduced_count_rule = [](std::uint64_t m) {
      return pair_count(m) - default_reduced_count(m);
    };
  }
  const ModelInstance inst(model, n);
  const unsigned workers = resolve_threads(threads, trials);
  const double nd = static_cast<double>(n);
  const double root_n = std::sqrt(nd);

  CouplingReport rep;
  rep.n = n;
  rep.trials = trials;
  rep.C = C;
  rep.alpha_n = model.alpha(n);
  rep.reduced_count = inst.reduced_count();
  rep.swapped_classes = swap_classes;
  rep.regular_count = pair_count(n) - rep.reduced_count;
  rep.expected_dif = static_cast<double>(rep.regular_count) * rep.alpha_n / nd;
  rep.dif_window_lo = root_n;
  rep.dif_window_hi = 3.0 * root_n;
  rep.dif_guarantee = 1.0 - 2.0 / root_n;
  rep.degree_cap = 3.0 * std::log(nd);
  rep.sandwich_lo = 2.0 * root_n / (3.0 * std::log(nd));
  rep.sandwich_hi = 6.0 * root_n;

  struct Slot {
    std::uint64_t dif = 0;
    std::uint64_t max_deg = 0;
    bool sandwich = false;
    bool monotone = true;
  };
  std::vector<Slot> slots(trials);
  parallel_trials(trials, workers, [&](unsigned, std::uint64_t t) {
    const CoupledTriple triple = sample_coupled(model, n, SeedSpec{seed, t});
    Slot& s = slots[t];
    s.dif = count_dif(triple);
    s.max_deg = max_degree(triple.g);
    s.monotone = is_subgraph(triple.g_minus, triple.g) && is_subgraph(triple.g, triple.g_plus);
    for (std::uint32_t size : components(triple.g).sizes) {
      if (size >= rep.sandwich_lo && size <= rep.sandwich_hi) s.sandwich = true;
    }
  });

  std::vector<double> dif, deg;
  std::uint64_t in_window = 0, deg_ok = 0, sandwich = 0;
  for (const Slot& s : slots) {
    dif.push_back(static_cast<double>(s.dif));
    deg.push_back(static_cast<double>(s.max_deg));
    in_window += static_cast<double>(s.dif) >= rep.dif_window_lo && static_cast<double>(s.dif) <= rep.dif_window_hi;
    deg_ok += static_cast<double>(s.max_deg) <= rep.degree_cap;
    sandwich += s.sandwich;
    rep.coupling_monotone = rep.coupling_monotone && s.monotone;
  }
  rep.dif = summarize(dif);
  rep.max_degree = summarize(deg);
  rep.dif_in_window = summarize_frequency(in_window, trials, exact_ci);
  rep.max_degree_ok = summarize_frequency(deg_ok, trials, exact_ci);
  rep.sandwich = summarize_frequency(sandwich, trials, exact_ci);
  return rep;
}

}  // namespace ergraph::mc
