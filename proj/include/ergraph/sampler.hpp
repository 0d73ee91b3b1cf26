#pragma once

#include <cmath>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "ergraph/edge_index.hpp"
#include "ergraph/errors.hpp"
#include "ergraph/graph.hpp"
#include "ergraph/probmodel.hpp"
#include "ergraph/rng.hpp"

namespace ergraph {

namespace detail {

// Candidate probabilities may exceed p_u by rounding only.
inline constexpr double kEnvelopeSlack = 1e-12;

inline void check_under_envelope(double p, double p_u, Edge e) {
  if (p > p_u * (1.0 + kEnvelopeSlack) || p < 0.0) {
    throw infeasible_model_error("edge {" + std::to_string(e.u + 1) + "," + std::to_string(e.v + 1) +
                                 "} has probability " + std::to_string(p) + " outside the band envelope " +
                                 std::to_string(p_u));
  }
}

}  // namespace detail

/// Visits the candidate edges of K_n: each edge independently with
/// probability `rate`, in increasing colex order, found by geometric skips.
/// `fn(k, edge, mark)` receives the colex index and a mark uniform on
/// (0, rate], i.e. the edge's uniform label conditioned on being <= rate.
template <class Fn>
void for_each_candidate(std::uint64_t n, double rate, StreamRng& rng, Fn&& fn) {
  const std::uint64_t m = pair_count(n);
  if (m == 0 || !(rate > 0.0)) return;
  ColexCursor cursor;
  if (rate >= 1.0) {
    for (std::uint64_t k = 0; k < m; ++k) fn(k, cursor.seek(k), rng.uniform_open_closed());
    return;
  }
  const double log_q = std::log1p(-rate);
  std::uint64_t k = 0;  // next index that may be a candidate
  while (true) {
    const double skip = std::floor(std::log(rng.uniform_open_closed()) / log_q);
    if (!(skip < static_cast<double>(m - k))) return;
    k += static_cast<std::uint64_t>(skip);
    fn(k, cursor.seek(k), rng.uniform_open_closed() * rate);
    if (++k >= m) return;
  }
}

/// Open edges of one sample, appended to `out` (cleared first) in colex order.
/// Work is proportional to the number of candidates, about p_u n^2 / 2.
inline void sample_edges(const ModelInstance& inst, SeedSpec seed, std::vector<Edge>& out) {
  out.clear();
  StreamRng rng(seed);
  const double p_u = inst.band().p_u;
  for_each_candidate(inst.n(), p_u, rng, [&](std::uint64_t k, Edge e, double mark) {
    const double p = inst.prob(k, e.u, e.v);
    detail::check_under_envelope(p, p_u, e);
    if (mark <= p) out.push_back(e);
  });
}

/// One graph from the model, each edge open independently with p_n(e).
inline Graph sample_graph(const EdgeProbModel& model, std::uint64_t n, SeedSpec seed) {
  const ModelInstance inst(model, n);
  std::vector<Edge> edges;
  sample_edges(inst, seed, edges);
  return Graph::from_colex_sorted(static_cast<std::uint32_t>(n), edges);
}

/// G- subset of G subset of G+, driven by one uniform mark per edge:
/// G- = {X <= p_d}, G = {X <= p_n(e)}, G+ = {X <= p_u}.
struct CoupledTriple {
  Graph g_minus;
  Graph g;
  Graph g_plus;
  std::vector<Edge> dif_edges;  // open in g, closed in g_minus
};

inline std::uint64_t count_dif(const CoupledTriple& t) noexcept { return t.dif_edges.size(); }

inline CoupledTriple sample_coupled(const EdgeProbModel& model, std::uint64_t n, SeedSpec seed) {
  const ModelInstance inst(model, n);
  const auto [p_d, p_u] = inst.band();
  std::vector<Edge> minus, mid, plus, dif;
  StreamRng rng(seed);
  for_each_candidate(n, p_u, rng, [&](std::uint64_t k, Edge e, double mark) {
    const double p = inst.prob(k, e.u, e.v);
    detail::check_under_envelope(p, p_u, e);
    plus.push_back(e);
    const bool in_minus = mark <= p_d;
    const bool in_mid = mark <= p;
    if (in_minus) minus.push_back(e);
    if (in_mid) mid.push_back(e);
    if (in_mid && !in_minus) dif.push_back(e);
  });
  const auto nv = static_cast<std::uint32_t>(n);
  return CoupledTriple{Graph::from_colex_sorted(nv, minus), Graph::from_colex_sorted(nv, mid),
                       Graph::from_colex_sorted(nv, plus), std::move(dif)};
}

/// Coupled triple from explicit marks, one per colex edge index. Marks above
/// p_u leave the edge closed everywhere. Intended for small n.
inline CoupledTriple coupled_from_marks(const EdgeProbModel& model, std::uint64_t n, std::span<const double> marks) {
  const ModelInstance inst(model, n);
  if (marks.size() != pair_count(n)) throw domain_error("coupled_from_marks: need one mark per edge");
  const auto [p_d, p_u] = inst.band();
  std::vector<Edge> minus, mid, plus, dif;
  ColexCursor cursor;
  for (std::uint64_t k = 0; k < marks.size(); ++k) {
    const Edge e = cursor.seek(k);
    const double x = marks[k];
    const double p = inst.prob(k, e.u, e.v);
    if (x <= p_u) plus.push_back(e);
    if (x <= p) mid.push_back(e);
    if (x <= p_d) minus.push_back(e);
    if (x <= p && !(x <= p_d)) dif.push_back(e);
  }
  const auto nv = static_cast<std::uint32_t>(n);
  return CoupledTriple{Graph::from_colex_sorted(nv, minus), Graph::from_colex_sorted(nv, mid),
                       Graph::from_colex_sorted(nv, plus), std::move(dif)};
}

}  // namespace ergraph
