#pragma once

#include <charconv>
#include <cmath>
#include <cstdint>
#include <map>
#include <set>
#include <type_traits>
#include <variant>
#include <ostream>
#include <string>
#include <system_error>
#include <vector>

#include <json.hpp>

#include "ergraph/errors.hpp"
#include "ergraph/montecarlo.hpp"
#include "ergraph/probmodel.hpp"
#include "ergraph/stats.hpp"

namespace ergraph::io {

using json = nlohmann::json;

/// Shortest decimal that round-trips; "inf", "-inf", "nan" otherwise.
inline std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

/// JSON has no infinities; they are written as the strings used in CSV.
inline json number(double x) {
  if (std::isfinite(x)) return x;
  return format_double(x);
}

template <class T>
T get_or(const json& j, const char* key, T fallback) {
  return j.contains(key) ? j.at(key).get<T>() : fallback;
}

// ---------------------------------------------------------------------------
// Models
// ---------------------------------------------------------------------------

inline json alpha_to_json(const AlphaSequence& a) {
  return std::visit(
      [](const auto& v) -> json {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, AlphaSequence::Zero>) {
          return {{"kind", "zero"}};
        } else if constexpr (std::is_same_v<T, AlphaSequence::InverseSqrt>) {
          return {{"kind", "inverse_sqrt"}, {"coef", v.coefficient}};
        } else if constexpr (std::is_same_v<T, AlphaSequence::Constant>) {
          return {{"kind", "constant"}, {"value", v.value}};
        } else {
          throw domain_error("a custom alpha function cannot be serialised");
        }
      },
      a.variant());
}

inline AlphaSequence alpha_from_json(const json& j) {
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "zero") return AlphaSequence::zero();
  if (kind == "inverse_sqrt") return AlphaSequence::inverse_sqrt(get_or(j, "coef", 16.0));
  if (kind == "constant") return AlphaSequence::constant(j.at("value").get<double>());
  throw domain_error("unknown alpha kind '" + kind + "'");
}

/// {"n": N, "p": default, "edges": [[i, j, p], ...]} with 1-based vertices;
/// "colex": [...] gives every probability in colex order instead.
inline ProbTable table_from_json(const json& j) {
  const auto n = j.at("n").get<std::uint32_t>();
  if (n < 2) throw domain_error("table needs n >= 2");
  if (j.contains("colex")) return ProbTable(n, j.at("colex").get<std::vector<double>>());
  ProbTable t = ProbTable::homogeneous(n, get_or(j, "p", 0.0));
  if (j.contains("edges")) {
    for (const auto& e : j.at("edges")) {
      if (!e.is_array() || e.size() != 3) throw domain_error("table edges must be [i, j, p] triples");
      const auto i = e[0].get<std::int64_t>();
      const auto k = e[1].get<std::int64_t>();
      if (i < 1 || k < 1 || i > n || k > n) throw domain_error("table edge vertex out of range (1-based)");
      t.set(static_cast<Vertex>(i - 1), static_cast<Vertex>(k - 1), e[2].get<double>());
    }
  }
  return t;
}

inline json table_to_json(const ProbTable& t) {
  json edges = json::array();
  for (std::size_t k = 0; k < t.edge_count(); ++k) {
    const Edge e = colex_edge(k);
    edges.push_back({e.u + 1, e.v + 1, t.colex_probs()[k]});
  }
  return {{"n", t.n()}, {"edges", edges}};
}

inline EdgeProbModel model_from_json(const json& j) {
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "homogeneous") return EdgeProbModel::homogeneous(j.at("C").get<double>());
  if (kind == "two_class") {
    const AlphaSequence a = j.contains("alpha") ? alpha_from_json(j.at("alpha")) : AlphaSequence::inverse_sqrt(16.0);
    return EdgeProbModel::two_class(j.at("C").get<double>(), a);
  }
  if (kind == "custom_table") {
    ProbTable t = table_from_json(j.at("table"));
    if (j.contains("C")) {
      const AlphaSequence a = j.contains("alpha") ? alpha_from_json(j.at("alpha")) : AlphaSequence::zero();
      return EdgeProbModel::from_table(std::move(t), j.at("C").get<double>(), a);
    }
    return EdgeProbModel::from_table(std::move(t));
  }
  throw domain_error("unknown model kind '" + kind + "'");
}

inline json model_to_json(const EdgeProbModel& m) {
  if (const auto* h = std::get_if<Homogeneous>(&m.variant)) return {{"kind", "homogeneous"}, {"C", h->C}};
  if (const auto* tc = std::get_if<TwoClass>(&m.variant)) {
    if (tc->reduced_count_rule || tc->reduced_edge_selector) {
      throw domain_error("a two-class model with custom class rules cannot be serialised");
    }
    return {{"kind", "two_class"}, {"C", tc->C}, {"alpha", alpha_to_json(tc->alpha)}};
  }
  const auto& c = std::get<Custom>(m.variant);
  if (!c.table) throw domain_error("a custom model without a table cannot be serialised");
  return {{"kind", "custom_table"}, {"C", c.C}, {"alpha", alpha_to_json(c.alpha)}, {"table", table_to_json(*c.table)}};
}

// ---------------------------------------------------------------------------
// Experiment config and results
// ---------------------------------------------------------------------------

inline json config_to_json(const mc::ExperimentConfig& c) {
  return {{"model", model_to_json(c.model)},
          {"n", c.n},
          {"trials", c.trials},
          {"epsilon", c.epsilon},
          {"gamma", c.gamma},
          {"M", c.M},
          {"seed", c.seed},
          {"stats", c.which_stats},
          {"threads", c.threads},
          {"exact_ci", c.exact_ci},
          {"keep_trials", c.keep_trials},
          {"omega", c.omega},
          {"r_max", c.r_max},
          {"t_max", c.t_max}};
}

/// Fields missing from `j` keep their values from `base`.
inline mc::ExperimentConfig config_from_json(const json& j, mc::ExperimentConfig base = {}) {
  if (!j.is_object()) throw domain_error("config must be a JSON object");
  static const std::set<std::string> known{"model", "n",     "trials",      "epsilon", "gamma", "M",     "seed",
                                           "stats", "threads", "exact_ci", "keep_trials", "omega", "r_max", "t_max"};
  for (const auto& [key, _] : j.items()) {
    if (!known.contains(key)) throw domain_error("unknown config key '" + key + "'");
  }
  if (j.contains("model")) base.model = model_from_json(j.at("model"));
  base.n = get_or(j, "n", base.n);
  base.trials = get_or(j, "trials", base.trials);
  base.epsilon = get_or(j, "epsilon", base.epsilon);
  base.gamma = get_or(j, "gamma", base.gamma);
  base.M = get_or(j, "M", base.M);
  base.seed = get_or(j, "seed", base.seed);
  if (j.contains("stats")) base.which_stats = j.at("stats").get<std::set<std::string>>();
  base.threads = get_or(j, "threads", base.threads);
  base.exact_ci = get_or(j, "exact_ci", base.exact_ci);
  base.keep_trials = get_or(j, "keep_trials", base.keep_trials);
  base.omega = get_or(j, "omega", base.omega);
  base.r_max = get_or(j, "r_max", base.r_max);
  base.t_max = get_or(j, "t_max", base.t_max);
  return base;
}

inline json statistic_to_json(const Statistic& s) {
  return {{"mean", number(s.mean)},         {"variance", number(s.variance)}, {"half_width", number(s.half_width)},
          {"ci_lo", number(s.ci_lo)},       {"ci_hi", number(s.ci_hi)},       {"trials", s.trials},
          {"is_frequency", s.is_frequency}};
}

inline json metadata_to_json(const mc::Metadata& m, const json& resolved_config) {
  return {{"version", m.version},         {"seed", m.seed},       {"rng", m.rng},
          {"threads", m.threads},         {"wall_time_s", m.wall_time_s}, {"config", resolved_config}};
}

inline json summary_to_json(const mc::ExperimentSummary& s) {
  json stats = json::object();
  for (const auto& [name, st] : s.stats) stats[name] = statistic_to_json(st);
  json hist = json::array();
  for (const auto& [size, count] : s.histogram) hist.push_back({size, count});
  return {{"metadata", metadata_to_json(s.metadata, config_to_json(s.config))},
          {"q", s.qC},
          {"stats", stats},
          {"histogram", hist}};
}

inline json pmf_to_json(const mc::PmfEstimate& p) {
  json rows = json::array();
  for (const auto& pt : p.points) {
    json r = statistic_to_json(pt.freq);
    r["r"] = pt.r;
    r["count"] = pt.count;
    r["components"] = pt.components;
    rows.push_back(r);
  }
  return {{"n", p.n},
          {"trials", p.trials},
          {"vertex_one_only", p.vertex_one_only},
          {"isolated_vertices", p.isolated_vertices},
          {"midsize_hits", p.midsize_hits},
          {"points", rows}};
}

inline json bound_report_to_json(const mc::BoundReport& b) {
  json rows = json::array();
  for (const auto& row : b.rows) {
    rows.push_back({{"r", row.r},
                    {"freq", statistic_to_json(row.freq)},
                    {"count", row.count},
                    {"components", row.components},
                    {"lower", number(row.lower)},
                    {"upper", number(row.upper)},
                    {"status", mc::to_string(row.status)}});
  }
  json mid = {{"applicable", b.midsize.applicable}, {"freq", statistic_to_json(b.midsize.freq)}};
  if (b.midsize.applicable) {
    mid["bound"] = number(b.midsize.bound);
    mid["status"] = mc::to_string(b.midsize.status);
  } else {
    mid["reason"] = b.midsize.reason;
  }
  return {{"C", b.params.C},          {"epsilon", b.params.epsilon}, {"omega", b.params.omega},
          {"M", b.params.M},          {"n", b.n},                    {"trials", b.trials},
          {"rows", rows},             {"midsize", mid},              {"failures", b.failures},
          {"warnings", b.warnings}};
}

inline json layer_report_to_json(const mc::LayerReport& l) {
  json rows = json::array();
  for (const auto& row : l.rows) {
    rows.push_back({{"t", row.t},
                    {"mean", statistic_to_json(row.mean)},
                    {"second_moment", statistic_to_json(row.second)},
                    {"mean_bound", number(row.mean_bound)},
                    {"second_bound", number(row.second_bound)},
                    {"ok", row.ok}});
  }
  return {{"C_u", l.C_u}, {"samples", l.samples}, {"all_ok", l.all_ok}, {"rows", rows}};
}

inline json coupling_to_json(const mc::CouplingReport& c) {
  return {{"n", c.n},
          {"trials", c.trials},
          {"C", c.C},
          {"alpha_n", c.alpha_n},
          {"reduced_count", c.reduced_count},
          {"regular_count", c.regular_count},
          {"swapped_classes", c.swapped_classes},
          {"expected_dif", c.expected_dif},
          {"dif", statistic_to_json(c.dif)},
          {"dif_window", {c.dif_window_lo, c.dif_window_hi}},
          {"dif_in_window", statistic_to_json(c.dif_in_window)},
          {"dif_guarantee", c.dif_guarantee},
          {"degree_cap", c.degree_cap},
          {"max_degree", statistic_to_json(c.max_degree)},
          {"max_degree_ok", statistic_to_json(c.max_degree_ok)},
          {"sandwich_window", {c.sandwich_lo, c.sandwich_hi}},
          {"sandwich", statistic_to_json(c.sandwich)},
          {"coupling_monotone", c.coupling_monotone}};
}

// ---------------------------------------------------------------------------
// CSV
// ---------------------------------------------------------------------------

inline void write_statistics_csv(std::ostream& os, const std::map<std::string, Statistic>& stats) {
  os << "statistic,mean,variance,half_width,ci_lo,ci_hi,trials\n";
  for (const auto& [name, s] : stats) {
    os << name << ',' << format_double(s.mean) << ',' << format_double(s.variance) << ','
       << format_double(s.half_width) << ',' << format_double(s.ci_lo) << ',' << format_double(s.ci_hi) << ','
       << s.trials << '\n';
  }
}

/// One row per component: trial, comp_rank (1 = largest), size.
inline void write_census_csv(std::ostream& os, const std::vector<mc::TrialRecord>& trials) {
  os << "trial,comp_rank,size\n";
  for (std::size_t t = 0; t < trials.size(); ++t) {
    const auto& sizes = trials[t].sizes;
    for (std::size_t k = 0; k < sizes.size(); ++k) os << t << ',' << (k + 1) << ',' << sizes[k] << '\n';
  }
}

inline void write_flags_csv(std::ostream& os, const std::vector<mc::TrialRecord>& trials) {
  os << "trial,H1,B,W,V,H2,H3,Y,Z,giant_count,edges\n";
  for (std::size_t t = 0; t < trials.size(); ++t) {
    const EventFlags& f = trials[t].flags;
    os << t << ',' << int{f.H1} << ',' << int{f.B} << ',' << int{f.W} << ',' << int{f.V} << ',' << int{f.H2} << ','
       << int{f.H3} << ',' << f.Y << ',' << f.Z << ',' << f.giant_count << ',' << trials[t].edge_count << '\n';
  }
}

inline void write_histogram_csv(std::ostream& os, const std::map<std::uint32_t, std::uint64_t>& hist) {
  os << "size,vertices\n";
  for (const auto& [size, count] : hist) os << size << ',' << count << '\n';
}

inline void write_pmf_csv(std::ostream& os, const mc::PmfEstimate& p) {
  os << "r,freq,half_width,ci_lo,ci_hi,count,components\n";
  for (const auto& pt : p.points) {
    os << pt.r << ',' << format_double(pt.freq.mean) << ',' << format_double(pt.freq.half_width) << ','
       << format_double(pt.freq.ci_lo) << ',' << format_double(pt.freq.ci_hi) << ',' << pt.count << ','
       << pt.components << '\n';
  }
}

inline void write_bounds_csv(std::ostream& os, const mc::BoundReport& b) {
  os << "r,freq,ci_lo,ci_hi,count,components,lower,upper,status\n";
  for (const auto& row : b.rows) {
    os << row.r << ',' << format_double(row.freq.mean) << ',' << format_double(row.freq.ci_lo) << ','
       << format_double(row.freq.ci_hi) << ',' << row.count << ',' << row.components << ','
       << format_double(row.lower) << ','
       << format_double(row.upper) << ',' << mc::to_string(row.status) << '\n';
  }
}

inline void write_layers_csv(std::ostream& os, const mc::LayerReport& l) {
  os << "t,mean,mean_se,mean_bound,second_moment,second_se,second_bound,ok\n";
  for (const auto& row : l.rows) {
    os << row.t << ',' << format_double(row.mean.mean) << ',' << format_double(row.mean.std_error()) << ','
       << format_double(row.mean_bound) << ',' << format_double(row.second.mean) << ','
       << format_double(row.second.std_error()) << ',' << format_double(row.second_bound) << ',' << int{row.ok}
       << '\n';
  }
}

}  // namespace ergraph::io
