#pragma once

#include <algorithm>
#include <chrono>
#include <exception>
#include <cmath>
#include <cstdint>
#include <functional>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "ergraph/montecarlo.hpp"
#include "ergraph/oracle.hpp"
#include "ergraph/probmodel.hpp"
#include "ergraph/rng.hpp"
#include "ergraph/theory.hpp"

namespace ergraph::acceptance {

struct Options {
  unsigned threads = 0;
  std::uint64_t seed = 20240611;
  std::ostream* progress = nullptr;
};

struct Result {
  int id = 0;
  std::string name;
  bool passed = false;
  std::string detail;
  double seconds = 0.0;
};

namespace detail {

class Timer {
 public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

/// Streams "key=value" pairs with enough digits to read the margins.
class Detail {
 public:
  Detail() { os_ << std::setprecision(8); }
  template <class T>
  Detail& operator()(const std::string& key, const T& value) {
    if (!first_) os_ << ' ';
    first_ = false;
    os_ << key << '=' << value;
    return *this;
  }
  std::string str() const { return os_.str(); }

 private:
  std::ostringstream os_;
  bool first_ = true;
};

inline void runtime_check(Result& r, double limit, Detail& d) {
  d("runtime_s", r.seconds)("limit_s", limit);
  if (!(r.seconds < limit)) r.passed = false;
}

inline mc::ExperimentConfig homogeneous_config(double C, std::uint64_t n, std::uint64_t trials, const Options& opt,
                                               std::uint64_t salt) {
  mc::ExperimentConfig cfg;
  cfg.model = EdgeProbModel::homogeneous(C);
  cfg.n = n;
  cfg.trials = trials;
  cfg.seed = splitmix64_mix(opt.seed + salt);
  cfg.threads = opt.threads;
  return cfg;
}

}  // namespace detail

inline Result fixed_point_consistency(const Options&) {
  Result r{1, "fixed-point consistency", false, {}, 0.0};
  detail::Timer timer;
  double worst = 0.0;
  for (double C : {1.2, 1.5, 2.0, 3.0, 5.0, 8.0}) {
    const double a = theory::q_series(C, 1e-8).value;
    const double b = theory::q_fixed_point(C, 1e-10);
    worst = std::max(worst, std::abs(a - b));
  }
  r.seconds = timer.seconds();
  r.passed = worst < 1e-6;
  detail::Detail d;
  d("max_abs_diff", worst)("tol", 1e-6);
  detail::runtime_check(r, 1.0, d);
  r.detail = d.str();
  return r;
}

inline Result subcritical_q_is_one(const Options&) {
  Result r{2, "q(C)=1 for C<=1", false, {}, 0.0};
  detail::Timer timer;
  const theory::SeriesResult half = theory::q_series(0.5, 1e-6);
  const theory::SeriesResult crit = theory::q_series(1.0, 1e-12, theory::kMaxSeriesTerms);
  r.seconds = timer.seconds();
  const double gap = 1.0 - crit.value;
  r.passed = std::abs(half.value - 1.0) <= 1e-6 && crit.terms_used <= theory::kMaxSeriesTerms &&
             crit.value >= 0.995 && crit.value <= 1.0 && gap <= crit.tail_bound;
  detail::Detail d;
  d("q(0.5)", half.value)("q_partial(1)", crit.value)("terms", crit.terms_used)("gap", gap)("tail_bound",
                                                                                           crit.tail_bound);
  detail::runtime_check(r, 5.0, d);
  r.detail = d.str();
  return r;
}

inline Result strict_monotonicity(const Options&) {
  Result r{3, "q strictly decreasing on 1.1..8", false, {}, 0.0};
  detail::Timer timer;
  double min_drop = INFINITY;
  double prev = 0.0;
  for (int k = 11; k <= 80; ++k) {
    const double q = theory::q_series(k / 10.0, 1e-12).value;
    if (k > 11) min_drop = std::min(min_drop, prev - q);
    prev = q;
  }
  r.seconds = timer.seconds();
  r.passed = min_drop > 1e-7;
  detail::Detail d;
  d("min_drop", min_drop)("margin", 1e-7);
  r.detail = d.str();
  return r;
}

inline Result c0_threshold(const Options&) {
  Result r{4, "C0 threshold", false, {}, 0.0};
  detail::Timer timer;
  const double c0 = theory::solve_c0();
  const double res = std::abs(theory::c0_residual(c0));
  r.seconds = timer.seconds();
  r.passed = c0 > 2.0 && c0 < 8.0 && std::abs(c0 - 5.356694) <= 1e-5 && res < 1e-9;
  detail::Detail d;
  d("C0", c0)("expected", 5.356694)("residual", res);
  r.detail = d.str();
  return r;
}

inline Result supercritical_giant(const Options& opt) {
  Result r{5, "supercritical giant fraction", false, {}, 0.0};
  detail::Timer timer;
  auto cfg = detail::homogeneous_config(2.0, 100'000, 20, opt, 5);
  cfg.epsilon = 0.1;
  cfg.gamma = 0.05;
  cfg.M = 10.0;
  const auto s = mc::run(cfg);
  r.seconds = timer.seconds();
  const double target = 1.0 - theory::q_value(2.0);
  const double mean_y = s.stats.at("Y_over_n").mean;
  const double one_giant = s.stats.at("one_giant").mean;
  const double h2 = s.stats.at("H2").mean;
  r.passed = one_giant == 1.0 && std::abs(mean_y - target) <= 0.02 && h2 == 1.0;
  detail::Detail d;
  d("freq_one_giant", one_giant)("mean_Y/n", mean_y)("1-q(2)", target)("freq_H2", h2);
  detail::runtime_check(r, 60.0, d);
  r.detail = d.str();
  return r;
}

inline Result subcritical_smallness(const Options& opt) {
  Result r{6, "subcritical components small", false, {}, 0.0};
  detail::Timer timer;
  auto cfg = detail::homogeneous_config(0.5, 100'000, 50, opt, 6);
  cfg.M = 10.0;
  const auto s = mc::run(cfg);
  r.seconds = timer.seconds();
  const double cap = 10.0 * std::log(100'000.0);
  const double largest = s.histogram.empty() ? 0.0 : s.histogram.rbegin()->first;
  const double h1 = s.stats.at("H1").mean;
  r.passed = h1 == 1.0 && largest <= cap;
  detail::Detail d;
  d("freq_H1", h1)("largest", largest)("cap", cap);
  detail::runtime_check(r, 60.0, d);
  r.detail = d.str();
  return r;
}

inline Result midsize_gap(const Options& opt) {
  Result r{7, "no mid-size components", false, {}, 0.0};
  detail::Timer timer;
  auto cfg = detail::homogeneous_config(2.0, 100'000, 100, opt, 7);
  cfg.M = 10.0;
  cfg.epsilon = 0.1;
  const auto s = mc::run(cfg);
  r.seconds = timer.seconds();
  const double b = s.stats.at("B").mean;
  r.passed = b == 0.0;
  detail::Detail d;
  d("occurrences_B", std::llround(b * 100.0))("trials", 100);
  r.detail = d.str();
  return r;
}

inline Result uniqueness_above_c0(const Options& opt) {
  Result r{8, "unique giant above C0", false, {}, 0.0};
  detail::Timer timer;
  auto cfg = detail::homogeneous_config(6.0, 100'000, 50, opt, 8);
  cfg.gamma = 0.05;
  cfg.M = 10.0;
  const auto s = mc::run(cfg);
  r.seconds = timer.seconds();
  const double h3 = s.stats.at("H3").mean;
  r.passed = h3 >= 0.95;
  detail::Detail d;
  d("freq_H3", h3)("threshold", 0.95);
  r.detail = d.str();
  return r;
}

inline Result oracle_equivalence(const Options& opt) {
  Result r{9, "sampler matches exact enumeration", false, {}, 0.0};
  detail::Timer timer;
  constexpr int kTables = 20;
  constexpr std::uint32_t kN = 5;
  constexpr std::uint64_t kTrials = 1'000'000;
  StreamRng table_rng(SeedSpec{opt.seed, 9});
  int excursions = 0;
  double worst_z = 0.0;
  for (int t = 0; t < kTables; ++t) {
    std::vector<double> probs(pair_count(kN));
    for (double& p : probs) p = table_rng.uniform_open_closed();
    ProbTable table(kN, probs);
    const auto exact = oracle::exact_component_law(table, 0);
    mc::ExperimentConfig cfg;
    cfg.model = EdgeProbModel::from_table(table);
    cfg.n = kN;
    cfg.trials = kTrials;
    cfg.seed = splitmix64_mix(opt.seed + 900 + static_cast<std::uint64_t>(t));
    cfg.threads = opt.threads;
    const auto pmf = mc::estimate_pmf(cfg, kN, true);
    for (std::uint32_t k = 0; k < kN; ++k) {
      const double p = exact[k];
      const double sigma = std::sqrt(p * (1.0 - p) / static_cast<double>(kTrials));
      const double diff = std::abs(pmf.points[k].freq.mean - p);
      const double z = sigma > 0.0 ? diff / sigma : (diff == 0.0 ? 0.0 : INFINITY);
      worst_z = std::max(worst_z, z);
      if (z > 4.0) ++excursions;
    }
    if (opt.progress) *opt.progress << "  oracle table " << (t + 1) << "/" << kTables << '\n';
  }
  r.seconds = timer.seconds();
  r.passed = excursions <= 1;
  detail::Detail d;
  d("cells", kTables * kN)("beyond_4sigma", excursions)("max_z", worst_z);
  detail::runtime_check(r, 120.0, d);
  r.detail = d.str();
  return r;
}

inline Result coupling_example(const Options& opt) {
  Result r{10, "coupling example", false, {}, 0.0};
  detail::Timer timer;
  const auto a = mc::coupling_experiment(1024, 10'000, splitmix64_mix(opt.seed + 10), 2.0, opt.threads);
  const auto b = mc::coupling_experiment(10'000, 1'000, splitmix64_mix(opt.seed + 11), 2.0, opt.threads);
  // For the record only: the same run with the class sizes swapped.
  const auto swapped = mc::coupling_experiment(1024, 10'000, splitmix64_mix(opt.seed + 10), 2.0, opt.threads, 16.0,
                                               false, true);
  r.seconds = timer.seconds();
  r.passed = a.dif_in_window.mean >= 0.9375 && b.max_degree_ok.mean >= 0.99 && a.coupling_monotone &&
             b.coupling_monotone;
  detail::Detail d;
  d("freq_Rdif_in_[32,96]", a.dif_in_window.mean)("mean_Rdif", a.dif.mean)("freq_maxdeg<=3ln_n",
                                                                           b.max_degree_ok.mean)(
      "nested", a.coupling_monotone && b.coupling_monotone)("swapped_classes_freq_Rdif_in_window",
                                                            swapped.dif_in_window.mean)(
      "swapped_mean_Rdif", swapped.dif.mean);
  r.detail = d.str();
  return r;
}

inline Result tree_count_dominance(const Options& opt) {
  Result r{11, "component law inside tree-count bounds", false, {}, 0.0};
  detail::Timer timer;
  auto cfg = detail::homogeneous_config(2.0, 100'000, 100, opt, 11);
  cfg.epsilon = 0.05;
  theory::TheoryParams params;
  params.omega = 0.05;
  const auto rep = mc::bound_check(cfg, params, 1, 20);
  r.seconds = timer.seconds();
  std::uint64_t judged = 0;
  std::string failed_r;
  for (const auto& row : rep.rows) {
    judged += row.status != mc::CheckStatus::kInsufficientData;
    if (row.status == mc::CheckStatus::kFailure) failed_r += (failed_r.empty() ? "" : ",") + std::to_string(row.r);
  }
  r.passed = rep.failures == 0 && judged > 0;
  detail::Detail d;
  d("rows_judged", judged)("failures", rep.failures)("warnings", rep.warnings);
  if (!failed_r.empty()) d("failed_r", failed_r);
  r.detail = d.str();
  return r;
}

inline Result layer_moments(const Options& opt) {
  Result r{12, "subcritical BFS layer moments", false, {}, 0.0};
  detail::Timer timer;
  auto cfg = detail::homogeneous_config(0.8, 100'000, 200, opt, 12);
  const auto rep = mc::layer_check(cfg, 25);
  r.seconds = timer.seconds();
  std::uint64_t bad = 0;
  for (const auto& row : rep.rows) bad += !row.ok;
  r.passed = rep.all_ok;
  detail::Detail d;
  d("C_u", rep.C_u)("sources", rep.samples)("t_max", 25)("violations", bad);
  r.detail = d.str();
  return r;
}

using CriterionFn = Result (*)(const Options&);

inline const std::vector<CriterionFn>& criteria() {
  static const std::vector<CriterionFn> all{
      fixed_point_consistency, subcritical_q_is_one, strict_monotonicity, c0_threshold,
      supercritical_giant,     subcritical_smallness, midsize_gap,        uniqueness_above_c0,
      oracle_equivalence,      coupling_example,      tree_count_dominance, layer_moments};
  return all;
}

/// One line per result: "PASS|FAIL  <id>  <name>  <detail>".
inline void print(std::ostream& os, const Result& r) {
  os << (r.passed ? "PASS" : "FAIL") << "  " << std::setw(2) << r.id << "  " << r.name << "  " << r.detail << '\n';
}

/// Runs the selected criteria (all when `ids` is empty), printing each line
/// as it completes. Returns the number of failures.
inline int run(std::ostream& os, const Options& opt, const std::vector<int>& ids = {}) {
  int failures = 0;
  const auto& all = criteria();
  for (std::size_t k = 0; k < all.size(); ++k) {
    const int id = static_cast<int>(k) + 1;
    if (!ids.empty() && std::find(ids.begin(), ids.end(), id) == ids.end()) continue;
    if (opt.progress) *opt.progress << "criterion " << id << "...\n";
    Result res;
    try {
      res = all[k](opt);
    } catch (const std::exception& e) {
      res.id = id;
      res.name = "criterion " + std::to_string(id);
      res.detail = std::string("error: ") + e.what();
    }
    print(os, res);
    os.flush();
    failures += !res.passed;
  }
  return failures;
}

}  // namespace ergraph::acceptance
