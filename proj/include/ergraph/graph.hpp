#pragma once

#include <algorithm>
#include <cstdint>
#include <istream>
#include <ostream>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include "ergraph/edge_index.hpp"
#include "ergraph/errors.hpp"

namespace ergraph {

/// Simple undirected graph on vertices 0..n-1, stored as compressed sorted
/// adjacency lists. Immutable once built.
class Graph {
 public:
  Graph() = default;

  /// Graph with no edges.
  explicit Graph(std::uint32_t n) : n_(n), offsets_(static_cast<std::size_t>(n) + 1, 0) {}

  /// Builds from an edge list. Edges may come in any order and orientation;
  /// duplicates are merged. Self-loops and out-of-range vertices throw.
  static Graph from_edges(std::uint32_t n, std::vector<Edge> edges) {
    for (auto& e : edges) {
      if (e.u == e.v) throw domain_error("graph: self-loop");
      if (e.u >= n || e.v >= n) throw domain_error("graph: vertex out of range");
      if (e.u > e.v) std::swap(e.u, e.v);
    }
    std::sort(edges.begin(), edges.end(),
              [](const Edge& a, const Edge& b) { return colex_index(a.u, a.v) < colex_index(b.u, b.v); });
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    return from_colex_sorted(n, edges);
  }

  /// Builds from edges already in strictly increasing colex order with
  /// u < v. Adjacency lists come out sorted without a sort pass: for vertex
  /// x, its lower neighbours all appear (as u with v == x) before any edge
  /// whose larger endpoint exceeds x.
  static Graph from_colex_sorted(std::uint32_t n, std::span<const Edge> edges) {
    Graph g(n);
    for (const Edge& e : edges) {
      ++g.offsets_[e.u + 1];
      ++g.offsets_[e.v + 1];
    }
    for (std::size_t x = 0; x < n; ++x) g.offsets_[x + 1] += g.offsets_[x];
    g.neighbors_.resize(g.offsets_[n]);
    std::vector<std::uint64_t> fill(g.offsets_.begin(), g.offsets_.end() - 1);
    for (const Edge& e : edges) {
      g.neighbors_[fill[e.u]++] = e.v;
      g.neighbors_[fill[e.v]++] = e.u;
    }
    g.edge_count_ = edges.size();
    return g;
  }

  std::uint32_t n() const noexcept { return n_; }
  std::uint64_t edge_count() const noexcept { return edge_count_; }

  std::span<const Vertex> neighbors(Vertex v) const noexcept {
    return {neighbors_.data() + offsets_[v], neighbors_.data() + offsets_[v + 1]};
  }
  std::uint64_t degree(Vertex v) const noexcept { return offsets_[v + 1] - offsets_[v]; }

  bool has_edge(Vertex u, Vertex v) const noexcept {
    if (u >= n_ || v >= n_) return false;
    auto nb = neighbors(u);
    return std::binary_search(nb.begin(), nb.end(), v);
  }

  /// Edges with u < v in colex order.
  std::vector<Edge> edges() const {
    std::vector<Edge> out;
    out.reserve(edge_count_);
    for (Vertex v = 0; v < n_; ++v) {
      for (Vertex u : neighbors(v)) {
        if (u < v) out.push_back({u, v});
      }
    }
    return out;
  }

  friend bool operator==(const Graph& a, const Graph& b) {
    return a.n_ == b.n_ && a.offsets_ == b.offsets_ && a.neighbors_ == b.neighbors_;
  }

 private:
  std::uint32_t n_ = 0;
  std::uint64_t edge_count_ = 0;
  std::vector<std::uint64_t> offsets_{0};
  std::vector<Vertex> neighbors_;
};

/// True when every edge of `a` is an edge of `b` (same vertex count).
inline bool is_subgraph(const Graph& a, const Graph& b) {
  if (a.n() != b.n()) return false;
  for (Vertex v = 0; v < a.n(); ++v) {
    auto na = a.neighbors(v);
    auto nb = b.neighbors(v);
    if (!std::includes(nb.begin(), nb.end(), na.begin(), na.end())) return false;
  }
  return true;
}

// Edge-list text format: header "n m seed stream", then one "i j" line per
// edge, 1-based.

inline void write_edge_list(std::ostream& os, const Graph& g, std::uint64_t seed, std::uint64_t stream) {
  os << g.n() << ' ' << g.edge_count() << ' ' << seed << ' ' << stream << '\n';
  for (const Edge& e : g.edges()) os << (e.u + 1) << ' ' << (e.v + 1) << '\n';
}

struct EdgeListFile {
  Graph graph;
  std::uint64_t seed = 0;
  std::uint64_t stream = 0;
};

inline EdgeListFile read_edge_list(std::istream& is) {
  std::uint64_t n = 0, m = 0;
  EdgeListFile out;
  std::string header;
  if (!std::getline(is, header)) throw domain_error("edge list: missing header");
  std::istringstream hs(header);
  if (!(hs >> n >> m >> out.seed >> out.stream)) throw domain_error("edge list: bad header");
  std::vector<Edge> edges;
  edges.reserve(m);
  for (std::uint64_t k = 0; k < m; ++k) {
    std::uint64_t i = 0, j = 0;
    if (!(is >> i >> j)) throw domain_error("edge list: truncated");
    if (i < 1 || j < 1 || i > n || j > n) throw domain_error("edge list: vertex out of range");
    edges.push_back({static_cast<Vertex>(i - 1), static_cast<Vertex>(j - 1)});
  }
  out.graph = Graph::from_edges(static_cast<std::uint32_t>(n), std::move(edges));
  if (out.graph.edge_count() != m) throw domain_error("edge list: duplicate edges");
  return out;
}

}  // namespace ergraph
