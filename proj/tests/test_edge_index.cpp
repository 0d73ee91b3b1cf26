#include <gtest/gtest.h>

#include <set>
#include <sstream>
#include <vector>

#include "ergraph/edge_index.hpp"
#include "ergraph/graph.hpp"
#include "ergraph/rng.hpp"

using namespace ergraph;

TEST(EdgeIndex, ColexRoundTripSmall) {
  std::uint64_t k = 0;
  for (Vertex v = 1; v < 60; ++v) {
    for (Vertex u = 0; u < v; ++u, ++k) {
      EXPECT_EQ(colex_index(u, v), k);
      EXPECT_EQ(colex_edge(k), (Edge{u, v}));
    }
  }
  EXPECT_EQ(k, pair_count(60));
}

TEST(EdgeIndex, ColexRoundTripLarge) {
  for (Vertex v : {1000u, 65536u, 100000u, 4000000000u}) {
    for (Vertex u : {0u, 1u, v / 2, v - 1}) {
      const auto k = colex_index(u, v);
      EXPECT_EQ(colex_edge(k), (Edge{u, v}));
    }
  }
}

TEST(EdgeIndex, CursorMatchesDirectDecode) {
  ColexCursor cur;
  for (std::uint64_t k : {0ull, 1ull, 2ull, 5ull, 6ull, 100ull, 101ull, 5000ull, 123456ull}) {
    EXPECT_EQ(cur.seek(k), colex_edge(k));
  }
}

TEST(EdgeIndex, PairCount) {
  EXPECT_EQ(pair_count(0), 0u);
  EXPECT_EQ(pair_count(1), 0u);
  EXPECT_EQ(pair_count(2), 1u);
  EXPECT_EQ(pair_count(1024), 523776u);
}

TEST(Rng, StreamsAreReproducibleAndDistinct) {
  StreamRng a(SeedSpec{7, 3}), b(SeedSpec{7, 3}), c(SeedSpec{7, 4}), d(SeedSpec{8, 3});
  std::set<std::uint64_t> firsts;
  for (int k = 0; k < 100; ++k) {
    const auto x = a();
    EXPECT_EQ(x, b());
    firsts.insert(x);
  }
  EXPECT_NE(StreamRng(SeedSpec{7, 3})(), c());
  EXPECT_NE(StreamRng(SeedSpec{7, 3})(), d());
  EXPECT_EQ(firsts.size(), 100u);
}

TEST(Rng, UniformIsInOpenClosedUnitInterval) {
  StreamRng r(SeedSpec{1, 0});
  double sum = 0.0;
  constexpr int kDraws = 200000;
  for (int k = 0; k < kDraws; ++k) {
    const double u = r.uniform_open_closed();
    ASSERT_GT(u, 0.0);
    ASSERT_LE(u, 1.0);
    sum += u;
  }
  EXPECT_NEAR(sum / kDraws, 0.5, 0.005);
}

TEST(Graph, FromEdgesNormalisesAndDeduplicates) {
  const Graph g = Graph::from_edges(5, {{3, 1}, {0, 4}, {1, 3}, {2, 0}});
  EXPECT_EQ(g.edge_count(), 3u);
  EXPECT_TRUE(g.has_edge(1, 3));
  EXPECT_TRUE(g.has_edge(3, 1));
  EXPECT_TRUE(g.has_edge(4, 0));
  EXPECT_FALSE(g.has_edge(1, 2));
  EXPECT_EQ(g.degree(0), 2u);
  EXPECT_EQ(g.edges(), (std::vector<Edge>{{0, 2}, {1, 3}, {0, 4}}));
}

TEST(Graph, RejectsBadEdges) {
  EXPECT_THROW(Graph::from_edges(3, {{1, 1}}), domain_error);
  EXPECT_THROW(Graph::from_edges(3, {{0, 3}}), domain_error);
}

TEST(Graph, AdjacencyIsSorted) {
  std::vector<Edge> edges;
  for (Vertex v = 1; v < 30; ++v) {
    for (Vertex u = 0; u < v; u += 3) edges.push_back({u, v});
  }
  const Graph g = Graph::from_edges(30, edges);
  for (Vertex v = 0; v < 30; ++v) {
    auto nb = g.neighbors(v);
    EXPECT_TRUE(std::is_sorted(nb.begin(), nb.end()));
  }
}

TEST(Graph, Subgraph) {
  const Graph a = Graph::from_edges(4, {{0, 1}});
  const Graph b = Graph::from_edges(4, {{0, 1}, {2, 3}});
  EXPECT_TRUE(is_subgraph(a, b));
  EXPECT_FALSE(is_subgraph(b, a));
  EXPECT_FALSE(is_subgraph(a, Graph(5)));
}

TEST(Graph, EdgeListRoundTrip) {
  const Graph g = Graph::from_edges(6, {{0, 5}, {1, 2}, {3, 4}});
  std::stringstream ss;
  write_edge_list(ss, g, 42, 9);
  const std::string text = ss.str();
  EXPECT_EQ(text.substr(0, text.find('\n')), "6 3 42 9");
  EXPECT_NE(text.find("\n1 6\n"), std::string::npos);  // 1-based
  const EdgeListFile back = read_edge_list(ss);
  EXPECT_EQ(back.graph, g);
  EXPECT_EQ(back.seed, 42u);
  EXPECT_EQ(back.stream, 9u);
}

TEST(Graph, EdgeListRejectsMalformed) {
  std::istringstream bad_header("6 x\n");
  EXPECT_THROW(read_edge_list(bad_header), domain_error);
  std::istringstream zero_vertex("3 1 0 0\n0 2\n");
  EXPECT_THROW(read_edge_list(zero_vertex), domain_error);
}
