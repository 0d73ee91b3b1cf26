#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <memory>
#include <random>
#include <string>
#include <type_traits>
#include <utility>
#include <variant>
#include <vector>

#include "ergraph/edge_index.hpp"
#include "ergraph/errors.hpp"
#include "ergraph/rng.hpp"

namespace ergraph {

// ---------------------------------------------------------------------------
// Alpha sequences
// ---------------------------------------------------------------------------

/// The vanishing band half-width alpha_n.
class AlphaSequence {
 public:
  struct Zero {};
  struct InverseSqrt {
    double coefficient = 16.0;
  };
  struct Constant {
    double value = 0.0;
  };
  struct Custom {
    std::function<double(std::uint64_t)> fn;
  };
  using Variant = std::variant<Zero, InverseSqrt, Constant, Custom>;

  AlphaSequence() = default;

  static AlphaSequence zero() { return AlphaSequence{Zero{}}; }
  static AlphaSequence inverse_sqrt(double coefficient) {
    if (!(coefficient >= 0.0)) throw domain_error("alpha coefficient must be nonnegative");
    return AlphaSequence{InverseSqrt{coefficient}};
  }
  /// alpha_n = value for every n. Does not vanish; used for table models
  /// that only exist at one n.
  static AlphaSequence constant(double value) {
    if (!(value >= 0.0)) throw domain_error("alpha must be nonnegative");
    return AlphaSequence{Constant{value}};
  }
  static AlphaSequence custom(std::function<double(std::uint64_t)> fn) {
    if (!fn) throw domain_error("custom alpha needs a function");
    return AlphaSequence{Custom{std::move(fn)}};
  }

  double operator()(std::uint64_t n) const {
    return std::visit(
        [n](const auto& a) -> double {
          using T = std::decay_t<decltype(a)>;
          if constexpr (std::is_same_v<T, Zero>) {
            return 0.0;
          } else if constexpr (std::is_same_v<T, InverseSqrt>) {
            return a.coefficient / std::sqrt(static_cast<double>(n));
          } else if constexpr (std::is_same_v<T, Constant>) {
            return a.value;
          } else {
            return a.fn(n);
          }
        },
        variant_);
  }

  const Variant& variant() const noexcept { return variant_; }
  bool is_zero() const noexcept { return std::holds_alternative<Zero>(variant_); }

 private:
  explicit AlphaSequence(Variant v) : variant_(std::move(v)) {}
  Variant variant_ = Zero{};
};

struct AlphaCheck {
  bool nonnegative = true;
  bool vanishing = true;
  std::vector<std::pair<std::uint64_t, double>> grid;  // (n, alpha_n)
  bool ok() const noexcept { return nonnegative && vanishing; }
};

/// Checks alpha_n >= 0 and alpha_n -> 0 on a logarithmic grid n = 10^1 ..
/// 10^9 (four points per decade).
///
/// The vanishing test looks at the upper envelope sup_{m >= n} alpha_m over
/// the grid: it must be zero at the end or drop strictly across each of the
/// last four decades, and end below its starting value.
inline AlphaCheck check_alpha(const AlphaSequence& alpha) {
  AlphaCheck out;
  for (int step = 4; step <= 36; ++step) {
    const auto n = static_cast<std::uint64_t>(std::llround(std::pow(10.0, step / 4.0)));
    const double a = alpha(n);
    out.grid.emplace_back(n, a);
    if (!(a >= 0.0) || !std::isfinite(a)) out.nonnegative = false;
  }
  std::vector<double> envelope(out.grid.size());
  double running = 0.0;
  for (std::size_t k = out.grid.size(); k-- > 0;) {
    running = std::max(running, out.grid[k].second);
    envelope[k] = running;
  }
  const double last = envelope.back();
  if (last > 0.0) {
    // Index 4d holds 10^(d+1); compare 10^5 -> 10^6 -> ... -> 10^9.
    for (std::size_t k = 16; k + 4 < envelope.size(); k += 4) {
      if (!(envelope[k + 4] < envelope[k])) out.vanishing = false;
    }
    if (!(last < envelope.front())) out.vanishing = false;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Explicit per-edge tables
// ---------------------------------------------------------------------------

/// Explicit edge -> probability table for small n, stored in colex order.
class ProbTable {
 public:
  ProbTable() = default;

  /// Table with every edge at probability p.
  static ProbTable homogeneous(std::uint32_t n, double p) {
    return ProbTable(n, std::vector<double>(pair_count(n), p));
  }

  /// `colex_probs[k]` is the probability of colex_edge(k).
  ProbTable(std::uint32_t n, std::vector<double> colex_probs) : n_(n), p_(std::move(colex_probs)) {
    if (n < 2) throw domain_error("table needs n >= 2");
    if (p_.size() != pair_count(n)) throw domain_error("table size must be n(n-1)/2");
    for (double p : p_) {
      if (!(p >= 0.0 && p <= 1.0)) throw domain_error("table probabilities must lie in [0,1]");
    }
  }

  std::uint32_t n() const noexcept { return n_; }
  std::size_t edge_count() const noexcept { return p_.size(); }
  const std::vector<double>& colex_probs() const noexcept { return p_; }

  double at(Vertex i, Vertex j) const {
    if (i == j || i >= n_ || j >= n_) throw domain_error("table edge out of range");
    if (i > j) std::swap(i, j);
    return p_[colex_index(i, j)];
  }
  void set(Vertex i, Vertex j, double p) {
    if (i == j || i >= n_ || j >= n_) throw domain_error("table edge out of range");
    if (!(p >= 0.0 && p <= 1.0)) throw domain_error("table probabilities must lie in [0,1]");
    if (i > j) std::swap(i, j);
    p_[colex_index(i, j)] = p;
  }

  double min_prob() const { return *std::min_element(p_.begin(), p_.end()); }
  double max_prob() const { return *std::max_element(p_.begin(), p_.end()); }

 private:
  std::uint32_t n_ = 0;
  std::vector<double> p_;
};

// ---------------------------------------------------------------------------
// Edge probability models
// ---------------------------------------------------------------------------

/// Number of reduced edges for the two-class model: floor(n^2/8) clamped to
/// n(n-1)/2.
inline std::uint64_t default_reduced_count(std::uint64_t n) noexcept {
  return std::min(n * n / 8, pair_count(n));
}

struct Homogeneous {
  double C = 1.0;
};

/// Edges are either reduced, p = (C - alpha_n)/n, or regular, p = C/n.
struct TwoClass {
  double C = 1.0;
  AlphaSequence alpha = AlphaSequence::inverse_sqrt(16.0);
  /// n -> number of reduced edges; empty means default_reduced_count.
  std::function<std::uint64_t(std::uint64_t)> reduced_count_rule;
  /// (n, colex index, reduced count) -> is reduced; empty means the first
  /// `reduced count` colex indices.
  std::function<bool(std::uint64_t, std::uint64_t, std::uint64_t)> reduced_edge_selector;
};

/// Arbitrary per-edge probabilities. `table`, when set, is the source of
/// `prob_fn` and is kept so the model can be serialised.
struct Custom {
  double C = 1.0;
  AlphaSequence alpha;
  std::function<double(std::uint64_t n, Vertex i, Vertex j)> prob_fn;
  std::shared_ptr<const ProbTable> table;
};

/// Edge-probability model confined to the band (C - alpha_n)/n <= p <= (C + alpha_n)/n.
struct EdgeProbModel {
  std::variant<Homogeneous, TwoClass, Custom> variant;

  static EdgeProbModel homogeneous(double C) {
    if (!(C > 0.0)) throw domain_error("C must be positive");
    return EdgeProbModel{Homogeneous{C}};
  }
  static EdgeProbModel two_class(double C, AlphaSequence alpha = AlphaSequence::inverse_sqrt(16.0)) {
    if (!(C > 0.0)) throw domain_error("C must be positive");
    return EdgeProbModel{TwoClass{C, std::move(alpha), {}, {}}};
  }
  static EdgeProbModel custom(double C, AlphaSequence alpha,
                              std::function<double(std::uint64_t, Vertex, Vertex)> fn) {
    if (!(C > 0.0)) throw domain_error("C must be positive");
    if (!fn) throw domain_error("custom model needs a probability function");
    return EdgeProbModel{Custom{C, std::move(alpha), std::move(fn), nullptr}};
  }
  /// Model backed by an explicit table. Without C/alpha, the band is the
  /// tightest one around the table's values: C = n(min+max)/2,
  /// alpha = n(max-min)/2 (constant in n, meaningful only at the table's n).
  static EdgeProbModel from_table(ProbTable table) {
    const double n = table.n();
    const double lo = table.min_prob();
    const double hi = table.max_prob();
    const double C = n * (lo + hi) / 2.0;
    const double a = n * (hi - lo) / 2.0;
    return from_table(std::move(table), C, a > 0.0 ? AlphaSequence::constant(a) : AlphaSequence::zero());
  }
  /// Table models accept C = 0 so an all-zero table is representable.
  static EdgeProbModel from_table(ProbTable table, double C, AlphaSequence alpha) {
    if (!(C >= 0.0)) throw domain_error("C must be nonnegative");
    auto shared = std::make_shared<const ProbTable>(std::move(table));
    auto fn = [shared](std::uint64_t n, Vertex i, Vertex j) -> double {
      if (n != shared->n()) throw domain_error("table model queried at a different n");
      return shared->at(i, j);
    };
    return EdgeProbModel{Custom{C, std::move(alpha), std::move(fn), shared}};
  }

  double C() const noexcept {
    return std::visit([](const auto& m) { return m.C; }, variant);
  }
  double alpha(std::uint64_t n) const {
    return std::visit(
        [n](const auto& m) -> double {
          if constexpr (std::is_same_v<std::decay_t<decltype(m)>, Homogeneous>) {
            return 0.0;
          } else {
            return m.alpha(n);
          }
        },
        variant);
  }
};

struct Band {
  double p_d = 0.0;
  double p_u = 0.0;
};

/// Lower and upper edge probabilities (C -/+ alpha_n)/n.
/// Throws infeasible_model_error if p_u > 1 or p_d < 0.
inline Band band(const EdgeProbModel& model, std::uint64_t n) {
  if (n < 2) throw domain_error("band needs n >= 2");
  const double C = model.C();
  const double a = model.alpha(n);
  if (!(a >= 0.0)) throw domain_error("alpha_n must be nonnegative");
  const double nd = static_cast<double>(n);
  Band b{(C - a) / nd, (C + a) / nd};
  if (b.p_u > 1.0) {
    throw infeasible_model_error("upper band (C + alpha_n)/n = " + std::to_string(b.p_u) +
                                 " exceeds 1 at n = " + std::to_string(n));
  }
  if (b.p_d < -1e-15) {
    throw infeasible_model_error("lower band (C - alpha_n)/n = " + std::to_string(b.p_d) + " is negative at n = " +
                                 std::to_string(n));
  }
  b.p_d = std::max(b.p_d, 0.0);
  return b;
}

/// A model evaluated at a fixed n, with the band and class sizes cached.
/// This is what the samplers use on their hot path.
class ModelInstance {
 public:
  ModelInstance(const EdgeProbModel& model, std::uint64_t n)
      : model_(&model), n_(n), band_(ergraph::band(model, n)) {
    if (n > std::numeric_limits<Vertex>::max()) throw domain_error("n too large for 32-bit vertices");
    if (const auto* tc = std::get_if<TwoClass>(&model.variant)) {
      reduced_count_ = tc->reduced_count_rule ? std::min(tc->reduced_count_rule(n), pair_count(n))
                                              : default_reduced_count(n);
      const double C = tc->C;
      const double nd = static_cast<double>(n);
      reduced_p_ = (C - tc->alpha(n)) / nd;
      regular_p_ = C / nd;
    } else if (const auto* h = std::get_if<Homogeneous>(&model.variant)) {
      regular_p_ = h->C / static_cast<double>(n);
    }
  }

  ModelInstance(EdgeProbModel&&, std::uint64_t) = delete;

  std::uint64_t n() const noexcept { return n_; }
  const Band& band() const noexcept { return band_; }
  std::uint64_t reduced_count() const noexcept { return reduced_count_; }

  /// Probability of edge {i, j} (i < j) whose colex index is k.
  double prob(std::uint64_t k, Vertex i, Vertex j) const {
    switch (model_->variant.index()) {
      case 0:
        return regular_p_;
      case 1: {
        const auto& tc = std::get<TwoClass>(model_->variant);
        const bool reduced = tc.reduced_edge_selector ? tc.reduced_edge_selector(n_, k, reduced_count_)
                                                      : k < reduced_count_;
        return reduced ? reduced_p_ : regular_p_;
      }
      default:
        return std::get<Custom>(model_->variant).prob_fn(n_, i, j);
    }
  }

 private:
  const EdgeProbModel* model_;
  std::uint64_t n_;
  Band band_;
  std::uint64_t reduced_count_ = 0;
  double reduced_p_ = 0.0;
  double regular_p_ = 0.0;
};

/// p_n(e) for edge {i, j} (0-based, either order).
inline double edge_prob(const EdgeProbModel& model, std::uint64_t n, Vertex i, Vertex j) {
  if (n < 2) throw domain_error("edge_prob needs n >= 2");
  if (i == j) throw domain_error("edge_prob: self-loop");
  if (i >= n || j >= n) throw domain_error("edge_prob: vertex out of range");
  if (i > j) std::swap(i, j);
  // Band feasibility is not required to read a probability, so bypass
  // ModelInstance for the closed-form variants.
  const double nd = static_cast<double>(n);
  return std::visit(
      [&](const auto& m) -> double {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, Homogeneous>) {
          return m.C / nd;
        } else if constexpr (std::is_same_v<T, TwoClass>) {
          const std::uint64_t count = m.reduced_count_rule
                                          ? std::min(m.reduced_count_rule(n), pair_count(n))
                                          : default_reduced_count(n);
          const std::uint64_t k = colex_index(i, j);
          const bool reduced = m.reduced_edge_selector ? m.reduced_edge_selector(n, k, count) : k < count;
          return reduced ? (m.C - m.alpha(n)) / nd : m.C / nd;
        } else {
          return m.prob_fn(n, i, j);
        }
      },
      model.variant);
}

struct BandViolation {
  Edge edge;
  double prob = 0.0;
};

struct ValidationReport {
  std::uint64_t n = 0;
  Band band;
  bool band_feasible = true;
  bool exhaustive = true;
  std::uint64_t edges_checked = 0;
  std::uint64_t violation_count = 0;
  std::vector<BandViolation> violations;  // first `max_recorded` only
  std::string message;

  bool valid() const noexcept { return band_feasible && violation_count == 0; }
};

struct ValidateOptions {
  std::uint64_t exhaustive_limit = 10'000;
  std::uint64_t sample_count = 1'000'000;
  std::size_t max_recorded = 1000;
  std::uint64_t seed = 0x5eed;
};

/// Scans every edge (n <= exhaustive_limit) or a uniform sample of edges and
/// reports those outside [p_d, p_u] or outside [0, 1].
inline ValidationReport validate(const EdgeProbModel& model, std::uint64_t n, const ValidateOptions& opt = {}) {
  ValidationReport rep;
  rep.n = n;
  if (n < 2) {
    rep.band_feasible = false;
    rep.message = "n must be at least 2";
    return rep;
  }
  const double nd = static_cast<double>(n);
  rep.band = Band{(model.C() - model.alpha(n)) / nd, (model.C() + model.alpha(n)) / nd};
  if (rep.band.p_u > 1.0) {
    rep.band_feasible = false;
    rep.message = "upper band exceeds 1";
  }
  // Rounding slack for band edges computed through different expressions.
  const double lo = rep.band.p_d * (1.0 - 1e-12);
  const double hi = rep.band.p_u * (1.0 + 1e-12);
  auto check = [&](Vertex i, Vertex j) {
    const double p = edge_prob(model, n, i, j);
    ++rep.edges_checked;
    if (!(p >= lo && p <= hi && p >= 0.0 && p <= 1.0)) {
      ++rep.violation_count;
      if (rep.violations.size() < opt.max_recorded) rep.violations.push_back({Edge{i, j}, p});
    }
  };
  if (n <= opt.exhaustive_limit) {
    for (Vertex j = 1; j < n; ++j) {
      for (Vertex i = 0; i < j; ++i) check(i, j);
    }
  } else {
    rep.exhaustive = false;
    StreamRng rng(SeedSpec{opt.seed, n});
    std::uniform_int_distribution<std::uint64_t> pick(0, pair_count(n) - 1);
    for (std::uint64_t s = 0; s < opt.sample_count; ++s) {
      const Edge e = colex_edge(pick(rng));
      check(e.u, e.v);
    }
  }
  return rep;
}

}  // namespace ergraph
