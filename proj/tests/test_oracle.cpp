#include <gtest/gtest.h>

#include <cmath>
#include <numeric>
#include <vector>

#include "ergraph/oracle.hpp"
#include "ergraph/rng.hpp"

using namespace ergraph;
using namespace ergraph::oracle;

namespace {

ProbTable random_table(std::uint32_t n, std::uint64_t seed) {
  StreamRng rng(SeedSpec{seed, 0});
  std::vector<double> p(pair_count(n));
  for (auto& x : p) x = rng.uniform_open_closed();
  return ProbTable(n, std::move(p));
}

}  // namespace

TEST(Oracle, LawIsNormalised) {
  for (std::uint32_t n = 2; n <= 6; ++n) {
    const auto t = random_table(n, n);
    for (Vertex i = 0; i < n; ++i) {
      const auto law = exact_component_law(t, i);
      ASSERT_EQ(law.size(), n);
      EXPECT_NEAR(std::accumulate(law.begin(), law.end(), 0.0), 1.0, 1e-12);
      for (double x : law) EXPECT_GE(x, 0.0);
    }
  }
}

TEST(Oracle, CompleteTableIsConnected) {
  const auto law = exact_component_law(ProbTable::homogeneous(4, 1.0), 0);
  EXPECT_EQ(law, (std::vector<double>{0.0, 0.0, 0.0, 1.0}));
}

TEST(Oracle, ClosedFormsSmallN) {
  const double p = 0.3;
  auto law = exact_component_law(ProbTable::homogeneous(2, p), 1);
  EXPECT_NEAR(law[1], p, 1e-15);
  law = exact_component_law(ProbTable::homogeneous(3, p), 0);
  EXPECT_NEAR(law[0], (1 - p) * (1 - p), 1e-15);
  EXPECT_NEAR(law[1], 2 * p * (1 - p) * (1 - p), 1e-15);
  EXPECT_NEAR(law[2], 3 * p * p - 2 * p * p * p, 1e-15);
}

TEST(Oracle, BinaryAndGrayOrdersAgree) {
  const auto t = random_table(6, 42);
  const auto a = exact_component_law(t, 2, EnumerationOrder::kBinary);
  const auto b = exact_component_law(t, 2, EnumerationOrder::kGray);
  for (std::size_t r = 0; r < a.size(); ++r) EXPECT_NEAR(a[r], b[r], 1e-14);
}

TEST(Oracle, SizeCap) {
  const auto t7 = ProbTable::homogeneous(7, 0.1);
  EXPECT_THROW(exact_component_law(t7, 0), oracle_size_error);
  EXPECT_THROW(exact_component_law(ProbTable::homogeneous(8, 0.1), 0, EnumerationOrder::kBinary, true),
               oracle_size_error);
  const auto law = exact_component_law(t7, 0, EnumerationOrder::kBinary, true);
  EXPECT_NEAR(std::accumulate(law.begin(), law.end(), 0.0), 1.0, 1e-12);
  EXPECT_NEAR(law[0], std::pow(0.9, 6), 1e-14);
}

TEST(Oracle, RejectsVertexOutOfRange) {
  EXPECT_THROW(exact_component_law(ProbTable::homogeneous(3, 0.5), 3), domain_error);
}

TEST(Oracle, EventProbabilities) {
  const auto t = random_table(5, 9);
  EXPECT_NEAR(exact_event_prob(t, [](const ComponentCensus&) { return true; }), 1.0, 1e-12);
  // P(vertex 0 isolated) two ways.
  const double iso = exact_event_prob(t, [](const ComponentCensus& c) { return c.component_size(0) == 1; });
  EXPECT_NEAR(iso, exact_component_law(t, 0)[0], 1e-14);
  double direct = 1.0;
  for (Vertex j = 1; j < 5; ++j) direct *= 1.0 - t.at(0, j);
  EXPECT_NEAR(iso, direct, 1e-14);
  const double connected = exact_event_prob(t, [](const ComponentCensus& c) { return c.largest() == 5; });
  EXPECT_NEAR(connected, exact_component_law(t, 3)[4], 1e-14);
}

TEST(Oracle, ExpectedSizeIdentity) {
  // sum_i P(#E_i = r) = r * E[number of components of size r].
  const auto t = random_table(5, 13);
  std::vector<double> pooled(5, 0.0);
  for (Vertex i = 0; i < 5; ++i) {
    const auto law = exact_component_law(t, i);
    for (int r = 0; r < 5; ++r) pooled[r] += law[r];
  }
  std::vector<ExactSum> count(5);
  for_each_configuration(t, [&](std::span<const Edge> open, double w) {
    for (auto s : components(5, open).sizes) count[s - 1].add(w);
  });
  for (int r = 0; r < 5; ++r) EXPECT_NEAR(pooled[r], (r + 1) * count[r].value(), 1e-13) << r;
}

TEST(Oracle, CompensatedSum) {
  ExactSum s;
  s.add(1.0);
  for (int k = 0; k < 1000; ++k) s.add(1e-16);
  s.add(-1.0);
  EXPECT_NEAR(s.value(), 1e-13, 1e-20);
}
