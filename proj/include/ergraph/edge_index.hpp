#pragma once

#include <cmath>
#include <cstdint>

namespace ergraph {

using Vertex = std::uint32_t;

/// Undirected edge with u < v (0-based vertices).
struct Edge {
  Vertex u = 0;
  Vertex v = 0;

  friend bool operator==(const Edge&, const Edge&) = default;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

/// Number of edges of the complete graph on n vertices.
inline constexpr std::uint64_t pair_count(std::uint64_t n) noexcept {
  return n < 2 ? 0 : n * (n - 1) / 2;
}

/// Colexicographic index of edge {u, v}, u < v: v(v-1)/2 + u.
///
/// Edges are ordered by their larger endpoint first, so the index of every
/// edge inside the first k vertices does not depend on n.
inline constexpr std::uint64_t colex_index(Vertex u, Vertex v) noexcept {
  return static_cast<std::uint64_t>(v) * (static_cast<std::uint64_t>(v) - 1) / 2 + u;
}

/// Inverse of colex_index.
inline Edge colex_edge(std::uint64_t k) noexcept {
  auto v = static_cast<std::uint64_t>((1.0 + std::sqrt(1.0 + 8.0 * static_cast<double>(k))) / 2.0);
  while (v * (v - 1) / 2 > k) --v;
  while ((v + 1) * v / 2 <= k) ++v;
  return Edge{static_cast<Vertex>(k - v * (v - 1) / 2), static_cast<Vertex>(v)};
}

/// Walks colex indices in increasing order, decoding each to an edge in
/// amortised O(1) per step.
class ColexCursor {
 public:
  /// Advances to index k, which must not be smaller than the last index.
  Edge seek(std::uint64_t k) noexcept {
    while (k >= base_ + v_) {
      base_ += v_;
      ++v_;
    }
    return Edge{static_cast<Vertex>(k - base_), static_cast<Vertex>(v_)};
  }

 private:
  std::uint64_t v_ = 1;     // current larger endpoint
  std::uint64_t base_ = 0;  // colex index of edge {0, v_}
};

}  // namespace ergraph
