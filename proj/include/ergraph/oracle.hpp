#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "ergraph/components.hpp"
#include "ergraph/edge_index.hpp"
#include "ergraph/errors.hpp"
#include "ergraph/probmodel.hpp"

namespace ergraph::oracle {

inline constexpr std::uint32_t kMaxVertices = 6;
inline constexpr std::uint32_t kMaxVerticesOverride = 7;

enum class EnumerationOrder { kBinary, kGray };

/// Neumaier-compensated sum.
class ExactSum {
 public:
  void add(double x) noexcept {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
      comp_ += (sum_ - t) + x;
    } else {
      comp_ += (x - t) + sum_;
    }
    sum_ = t;
  }
  double value() const noexcept { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

inline void check_size(const ProbTable& table, bool allow_n7) {
  const std::uint32_t cap = allow_n7 ? kMaxVerticesOverride : kMaxVertices;
  if (table.n() > cap) {
    throw oracle_size_error("exhaustive enumeration supports n <= " + std::to_string(cap) + ", got n = " +
                            std::to_string(table.n()));
  }
}

/// Calls fn(open_edges, probability) once for each of the 2^m edge
/// configurations of the table.
template <class Fn>
void for_each_configuration(const ProbTable& table, Fn&& fn, EnumerationOrder order = EnumerationOrder::kBinary,
                            bool allow_n7 = false) {
  check_size(table, allow_n7);
  const auto& p = table.colex_probs();
  const std::size_t m = p.size();
  std::vector<Edge> all(m);
  for (std::size_t k = 0; k < m; ++k) all[k] = colex_edge(k);
  std::vector<Edge> open;
  open.reserve(m);
  const std::uint64_t total = std::uint64_t{1} << m;
  for (std::uint64_t c = 0; c < total; ++c) {
    const std::uint64_t mask = order == EnumerationOrder::kGray ? (c ^ (c >> 1)) : c;
    double w = 1.0;
    open.clear();
    for (std::size_t k = 0; k < m; ++k) {
      if (mask >> k & 1) {
        w *= p[k];
        open.push_back(all[k]);
      } else {
        w *= 1.0 - p[k];
      }
    }
    fn(std::span<const Edge>(open), w);
  }
}

/// Exact law of #E_i: entry r - 1 is P(#E_i = r), r = 1..n.
inline std::vector<double> exact_component_law(const ProbTable& table, Vertex i,
                                               EnumerationOrder order = EnumerationOrder::kBinary,
                                               bool allow_n7 = false) {
  check_size(table, allow_n7);
  if (i >= table.n()) throw domain_error("exact_component_law: vertex out of range");
  std::vector<ExactSum> acc(table.n());
  UnionFind uf;
  for_each_configuration(
      table,
      [&](std::span<const Edge> open, double w) {
        uf.reset(table.n());
        for (const Edge& e : open) uf.unite(e.u, e.v);
        acc[uf.set_size(i) - 1].add(w);
      },
      order, allow_n7);
  std::vector<double> law(table.n());
  for (std::size_t r = 0; r < law.size(); ++r) law[r] = acc[r].value();
  return law;
}

/// Exact probability that the component census satisfies `predicate`.
inline double exact_event_prob(const ProbTable& table, const std::function<bool(const ComponentCensus&)>& predicate,
                               EnumerationOrder order = EnumerationOrder::kBinary, bool allow_n7 = false) {
  ExactSum acc;
  for_each_configuration(
      table,
      [&](std::span<const Edge> open, double w) {
        if (predicate(components(table.n(), open))) acc.add(w);
      },
      order, allow_n7);
  return acc.value();
}

}  // namespace ergraph::oracle
