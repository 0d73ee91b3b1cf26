#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <numeric>
#include <span>
#include <vector>

#include "ergraph/edge_index.hpp"
#include "ergraph/errors.hpp"
#include "ergraph/graph.hpp"

namespace ergraph {

/// Disjoint sets over 0..n-1 with path halving and union by size.
class UnionFind {
 public:
  explicit UnionFind(std::size_t n = 0) { reset(n); }

  void reset(std::size_t n) {
    parent_.resize(n);
    size_.assign(n, 1);
    std::iota(parent_.begin(), parent_.end(), Vertex{0});
  }

  Vertex find(Vertex x) noexcept {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }

  /// Returns false if x and y were already joined.
  bool unite(Vertex x, Vertex y) noexcept {
    x = find(x);
    y = find(y);
    if (x == y) return false;
    if (size_[x] < size_[y]) std::swap(x, y);
    parent_[y] = x;
    size_[x] += size_[y];
    return true;
  }

  std::uint32_t set_size(Vertex x) noexcept { return size_[find(x)]; }
  std::size_t size() const noexcept { return parent_.size(); }

 private:
  std::vector<Vertex> parent_;
  std::vector<std::uint32_t> size_;
};

/// Connected components: a label per vertex plus the sizes, largest first.
/// Labels are 0..k-1 in order of each component's smallest vertex.
struct ComponentCensus {
  std::uint32_t n = 0;
  std::vector<std::uint32_t> comp_id;
  std::vector<std::uint32_t> sizes;  // descending
  std::vector<std::uint32_t> size_of_label;

  std::uint32_t component_size(Vertex v) const { return size_of_label[comp_id[v]]; }
  std::uint32_t largest() const noexcept { return sizes.empty() ? 0 : sizes.front(); }
};

namespace detail {

inline ComponentCensus census_from(UnionFind& uf, std::uint32_t n) {
  ComponentCensus c;
  c.n = n;
  c.comp_id.assign(n, 0);
  std::vector<std::uint32_t> label_of_root(n, UINT32_MAX);
  for (Vertex v = 0; v < n; ++v) {
    const Vertex r = uf.find(v);
    if (label_of_root[r] == UINT32_MAX) {
      label_of_root[r] = static_cast<std::uint32_t>(c.size_of_label.size());
      c.size_of_label.push_back(uf.set_size(r));
    }
    c.comp_id[v] = label_of_root[r];
  }
  c.sizes = c.size_of_label;
  std::sort(c.sizes.begin(), c.sizes.end(), std::greater<>());
  return c;
}

}  // namespace detail

inline ComponentCensus components(const Graph& g) {
  UnionFind uf(g.n());
  for (Vertex v = 0; v < g.n(); ++v) {
    for (Vertex u : g.neighbors(v)) {
      if (u < v) uf.unite(u, v);
    }
  }
  return detail::census_from(uf, g.n());
}

/// Census straight from an edge list, skipping graph construction.
inline ComponentCensus components(std::uint32_t n, std::span<const Edge> edges) {
  UnionFind uf(n);
  for (const Edge& e : edges) uf.unite(e.u, e.v);
  return detail::census_from(uf, n);
}

/// Graph-distance layers from one source.
struct BfsProfile {
  Vertex source = 0;
  std::vector<std::uint64_t> layer_sizes;  // [t] = #N_t(source), layer_sizes[0] = 1
  std::uint64_t tau = 1;                   // first t >= 1 with N_t empty
};

inline BfsProfile bfs_profile(const Graph& g, Vertex source) {
  if (source >= g.n()) throw domain_error("bfs_profile: vertex out of range");
  BfsProfile out;
  out.source = source;
  std::vector<std::uint32_t> dist(g.n(), UINT32_MAX);
  std::vector<Vertex> frontier{source}, next;
  dist[source] = 0;
  std::uint32_t t = 0;
  while (!frontier.empty()) {
    out.layer_sizes.push_back(frontier.size());
    next.clear();
    for (Vertex x : frontier) {
      for (Vertex y : g.neighbors(x)) {
        if (dist[y] == UINT32_MAX) {
          dist[y] = t + 1;
          next.push_back(y);
        }
      }
    }
    frontier.swap(next);
    ++t;
  }
  out.tau = out.layer_sizes.size();
  return out;
}

inline std::uint64_t max_degree(const Graph& g) noexcept {
  std::uint64_t best = 0;
  for (Vertex v = 0; v < g.n(); ++v) best = std::max(best, g.degree(v));
  return best;
}

/// Parameters of the component-size events.
struct EventParams {
  double M = 10.0;
  double gamma = 0.05;
  double epsilon = 0.1;
  double qC = 1.0;  ///< q(C), the non-giant fraction
};

/// Events on the component sizes of one graph.
///
///  - H1: every size <= M ln n.
///  - B:  some size in (M ln n, eps n].
///  - W:  largest size >= eps n.
///  - Y:  vertices in components of size > eps n; Z = n - Y.
///  - V:  (1 - q - gamma) n <= Y <= (1 - q + gamma) n.
///  - H2: V and no size in (M ln n, eps n].
///  - H3: exactly one size in [(1-q-gamma) n, (1-q+gamma) n], all others <= M ln n.
struct EventFlags {
  bool H1 = false;
  bool B = false;
  bool W = false;
  bool V = false;
  bool H2 = false;
  bool H3 = false;
  std::uint64_t Y = 0;
  std::uint64_t Z = 0;
  std::uint64_t giant_count = 0;  ///< components of size > eps n
};

inline EventFlags event_flags(const ComponentCensus& census, const EventParams& p) {
  if (!(p.epsilon > 0.0 && p.epsilon < 1.0)) throw domain_error("event_flags: epsilon must be in (0,1)");
  if (!(p.gamma > 0.0 && p.gamma < 1.0)) throw domain_error("event_flags: gamma must be in (0,1)");
  if (!(p.M > 0.0)) throw domain_error("event_flags: M must be positive");
  if (!(p.qC > 0.0 && p.qC <= 1.0)) throw domain_error("event_flags: q(C) must be in (0,1]");

  const double n = census.n;
  const double small_cap = p.M * std::log(n);  // size <= small_cap is small
  const double giant_floor = p.epsilon * n;     // size > giant_floor is giant
  const double v_lo = (1.0 - p.qC - p.gamma) * n;
  const double v_hi = (1.0 - p.qC + p.gamma) * n;

  EventFlags f;
  std::uint64_t in_v_range = 0;
  std::uint64_t not_small = 0;
  bool in_range_is_small = false;
  for (std::uint32_t s : census.sizes) {
    const double x = s;
    const bool small = x <= small_cap;
    if (!small) ++not_small;
    if (x > giant_floor) {
      f.Y += s;
      ++f.giant_count;
    }
    if (!small && x <= giant_floor) f.B = true;
    if (x >= v_lo && x <= v_hi) {
      ++in_v_range;
      in_range_is_small = small;
    }
  }
  const double largest = census.largest();
  f.H1 = largest <= small_cap;
  f.W = largest >= giant_floor;
  f.Z = census.n - f.Y;
  f.V = static_cast<double>(f.Y) >= v_lo && static_cast<double>(f.Y) <= v_hi;
  f.H2 = f.V && !f.B;
  // The in-range component is exempt from the smallness requirement.
  f.H3 = in_v_range == 1 && not_small == (in_range_is_small ? 0u : 1u);
  return f;
}

}  // namespace ergraph
