#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "ergraph/theory.hpp"

using namespace ergraph;
using namespace ergraph::theory;

namespace {

TheoryParams params(double C, double eps, double omega) {
  TheoryParams p;
  p.C = C;
  p.epsilon = eps;
  p.omega = omega;
  return p;
}

// ln((r-1)!) by direct summation, independent of the Stirling path.
double log_factorial_sum(std::uint64_t m) {
  double s = 0.0;
  for (std::uint64_t k = 2; k <= m; ++k) s += std::log(static_cast<double>(k));
  return s;
}

}  // namespace

TEST(Delta, Values) {
  EXPECT_EQ(delta(1.0), 0.0);
  EXPECT_NEAR(delta(std::numbers::e), std::numbers::e - 2.0, 1e-15);
  EXPECT_NEAR(delta(2.0), 0.306852819, 1e-9);
  EXPECT_THROW(delta(0.0), domain_error);
}

TEST(Delta, Perturbed) {
  const auto p = params(2.0, 0.01, 0.01);
  EXPECT_NEAR(delta_i(p, 0), 0.276853, 1e-6);
  EXPECT_NEAR(delta_i(p, 1), 0.306852819 - 0.04 - 0.01, 1e-9);
  EXPECT_GT(delta_i(p, 2), 0.0);
  EXPECT_THROW(delta_i(p, 3), domain_error);
  const auto tiny = params(2.0, 1e-9, 1e-9);
  for (int w = 0; w < 3; ++w) EXPECT_NEAR(delta_i(tiny, w), delta(2.0), 1e-8);
}

TEST(Delta, ParamsValidated) {
  EXPECT_THROW(delta_i(params(2.0, 0.0, 0.01), 0), domain_error);
  EXPECT_THROW(delta_i(params(2.0, 0.5, 0.0), 0), domain_error);
  EXPECT_THROW(delta_i(params(-1.0, 0.5, 0.1), 0), domain_error);
}

TEST(TreeTerm, Values) {
  EXPECT_DOUBLE_EQ(log_tree_term(1, 2.0), -2.0);
  EXPECT_NEAR(log_tree_term(3, 1.0), std::log(1.5) - 3.0, 1e-14);
  EXPECT_NEAR(std::exp(log_cayley(4)), 16.0, 1e-12);
  EXPECT_THROW(log_tree_term(0, 1.0), domain_error);
}

TEST(TreeTerm, MatchesDirectFormula) {
  for (std::uint64_t r : {2ull, 5ull, 9ull, 10ull, 11ull, 50ull, 170ull, 1000ull}) {
    for (double C : {0.5, 1.0, 2.0, 6.0}) {
      const double direct = (r - 2) * std::log(double(r)) + (r - 1) * std::log(C) - C * r - log_factorial_sum(r - 1);
      EXPECT_NEAR(log_tree_term(r, C), direct, 1e-10 * std::max(1.0, std::abs(direct))) << r << " " << C;
    }
  }
}

TEST(Stirling, RemainderRange) {
  for (std::uint64_t r = 1; r < 200; ++r) {
    const double s = stirling_remainder(r);
    EXPECT_GT(s, 0.0);
    EXPECT_LT(s, 1.0 / (12.0 * r));
    EXPECT_GT(s, 1.0 / (12.0 * r + 1.0));
  }
}

TEST(QSeries, Examples) {
  EXPECT_NEAR(q_series(0.5, 1e-6).value, 1.0, 1e-6);
  EXPECT_NEAR(q_series(2.0, 1e-6).value, 0.203188, 1e-6);
  const double q3 = q_series(3.0, 1e-6).value;
  const double q4 = q_series(4.0, 1e-6).value;
  EXPECT_GT(q4, 0.0);
  EXPECT_LT(q4, q3);
  EXPECT_TRUE(q_series(2.0, 1e-10).converged);
  EXPECT_GE(q_series(2.0, 1e-10).terms_used, 1u);
}

TEST(QSeries, TailBoundCertifies) {
  for (double C : {0.3, 0.5, 1.5, 2.0, 4.0, 8.0}) {
    const auto s = q_series(C, 1e-8);
    const double ref = q_fixed_point(C, 1e-15);
    EXPECT_LE(std::abs(ref - s.value), s.tail_bound + 1e-13) << C;
    EXPECT_LT(s.tail_bound, 1e-8);
  }
}

TEST(QSeries, CriticalCapsAndReports) {
  const auto s = q_series(1.0, 1e-12);
  EXPECT_FALSE(s.converged);
  EXPECT_EQ(s.terms_used, kMaxSeriesTerms);
  EXPECT_GE(s.value, 0.995);
  EXPECT_LE(s.value, 1.0);
  EXPECT_LE(1.0 - s.value, s.tail_bound);
}

TEST(QSeries, PartialSumsMonotoneAndBounded) {
  for (double C : {0.3, 0.5, 1.0, 1.5, 2.0, 4.0, 8.0}) {
    double prev = 0.0;
    for (std::uint64_t N : {1ull, 2ull, 5ull, 10ull, 50ull, 200ull, 1000ull}) {
      const double s = q_partial_sum(C, N);
      EXPECT_GE(s, prev) << C << " " << N;
      EXPECT_LE(s, 1.0 + 1e-14);
      prev = s;
    }
  }
}

TEST(FixedPoint, Values) {
  EXPECT_EQ(q_fixed_point(0.5, 1e-12), 1.0);
  EXPECT_EQ(q_fixed_point(1.0, 1e-12), 1.0);
  const double q = q_fixed_point(2.0, 1e-12);
  EXPECT_NEAR(q, 0.203188, 1e-6);
  EXPECT_LT(std::abs(q - std::exp(-2.0 * (1.0 - q))), 1e-9);
}

TEST(FixedPoint, AgreesWithSeries) {
  for (double C : {1.2, 1.5, 2.0, 3.0, 5.0, 8.0}) {
    EXPECT_LT(std::abs(q_series(C, 1e-8).value - q_fixed_point(C, 1e-10)), 2 * (1e-8 + 1e-10) + 1e-9);
  }
}

TEST(FixedPoint, StrictlyDecreasing) {
  const std::vector<double> grid{1.0, 1.2, 1.5, 2.0, 3.0, 5.0, 8.0};
  for (std::size_t a = 0; a < grid.size(); ++a) {
    for (std::size_t b = a + 1; b < grid.size(); ++b) {
      EXPECT_LT(q_series(grid[b], 1e-10).value, q_series(grid[a], 1e-10).value - 1e-9);
    }
  }
}

TEST(Remainder, DominatesTrueTail) {
  const double q2 = q_series(2.0, 1e-14).value;
  EXPECT_GE(theory::remainder(50, 2.0), q2 - q_partial_sum(2.0, 50));
  for (std::uint64_t N : {1ull, 5ull, 20ull, 100ull}) {
    for (double C : {0.5, 1.5, 3.0}) {
      const double tail = q_fixed_point(C, 1e-15) - q_partial_sum(C, N);
      EXPECT_GE(theory::remainder(N, C), tail - 1e-15) << N << " " << C;
    }
  }
}

TEST(Remainder, DominatedByCriticalAndVanishing) {
  for (std::uint64_t N : {10ull, 100ull, 1000ull}) {
    for (double C : {0.2, 0.5, 0.9, 1.1, 2.0, 5.0}) EXPECT_LE(theory::remainder(N, C), theory::remainder(N, 1.0)) << N << " " << C;
  }
  double prev = INFINITY;
  for (std::uint64_t N : {10ull, 100ull, 1000ull, 10000ull}) {
    const double r = theory::remainder(N, 2.0);
    EXPECT_LT(r, prev);
    prev = r;
  }
}

TEST(QiSeries, LimitAndOrdering) {
  const double q2 = q_series(2.0, 1e-12).value;
  EXPECT_LT(std::abs(q_i_series(0, params(2.0, 1e-4, 1e-4), 1e-10).value - q2), 1e-3);
  for (double eps : {0.01, 0.1, 0.5}) EXPECT_LE(q_i_series(2, params(2.0, eps, 0.01), 1e-10).value, q2);
  EXPECT_GE(q_i_series(1, params(2.0, 0.01, 0.01), 1e-10).value, q2);
  EXPECT_THROW(q_i_series(0, params(2.0, 0.3, 0.2), 1e-10), divergence_error);
}

TEST(QiSeries, ConvergesAsPerturbationVanishes) {
  const double q2 = q_series(2.0, 1e-13).value;
  for (int w = 0; w < 3; ++w) {
    double prev = INFINITY;
    for (double h : {1e-1, 1e-2, 1e-3}) {
      if (w < 2 && delta_i(params(2.0, h, h), w) <= 0.0) continue;
      const double d = std::abs(q_i_series(w, params(2.0, h, h), 1e-12).value - q2);
      EXPECT_LT(d, prev) << "which=" << w << " h=" << h;
      prev = d;
    }
  }
}

TEST(ComponentLaw, Upper) {
  const auto p = params(2.0, 0.01, 0.01);
  EXPECT_NEAR(component_law_upper(p, 1), std::exp(-2.0) * std::exp(2 * 0.01 + 0.01), 1e-14);
  EXPECT_NEAR(component_law_upper(p, 1), 0.139457, 1e-6);
  EXPECT_GE(component_law_upper(p, 1), std::exp(-2.0));
  EXPECT_THROW(component_law_upper(params(1.0, 0.01, 0.01), 1), critical_point_error);
  EXPECT_THROW(component_law_upper(params(2.0, 0.3, 0.2), 1), vacuous_bound_error);
}

TEST(ComponentLaw, UpperSumsToQ0) {
  const auto p = params(2.0, 0.01, 0.01);
  double s = 0.0;
  for (std::uint64_t r = 1; r <= 2000; ++r) s += component_law_upper(p, r);
  // q0 carries e^{-C} at r = 1 where the bound has e^{-C} e^{C eps + omega}.
  const double r1_gap = component_law_upper(p, 1) - std::exp(-2.0);
  const auto q0 = q_i_series(0, p, 1e-12);
  EXPECT_LE(s, q0.value + r1_gap + q0.tail_bound + 1e-12);
  EXPECT_NEAR(s - r1_gap, q0.value, 1e-9);
}

TEST(ComponentLaw, LowerBelowUpper) {
  const auto p = params(2.0, 0.01, 0.01);
  for (std::uint64_t r = 1; r <= 100; ++r) EXPECT_LE(component_law_lower(p, r), component_law_upper(p, r)) << r;
  EXPECT_GT(component_law_lower(p, 2), 0.0);
  EXPECT_NEAR(component_law_lower(params(2.0, 1e-9, 1e-9), 1), std::exp(-2.0), 1e-8);
}

TEST(CrossTerms, Structure) {
  const auto p = params(3.0, 0.01, 0.01);
  EXPECT_NEAR(cross_upper_distinct(p, 1, 2), cross_upper_distinct(p, 2, 1), 1e-18);
  const double d1 = delta_i(p, 1);
  const double f1 = std::exp(log_decay_term(1, d1, 3.0));
  const double f2 = std::exp(log_decay_term(2, d1, 3.0));
  EXPECT_NEAR(cross_upper_distinct(p, 1, 2), f1 * f2, 1e-15);
  // Independent substitution: T_2 = 1, (2-1)! = 1.
  EXPECT_NEAR(f2, std::exp(-2.0) * std::exp(-2.0 * d1) / 3.0, 1e-15);
  EXPECT_NEAR(cross_upper_distinct(p, 4, 4), std::pow(std::exp(log_decay_term(4, d1, 3.0)), 2), 1e-15);
  const auto p2 = params(2.0, 0.01, 0.01);
  EXPECT_NEAR(cross_upper_same(p2, 2), 0.02 * component_law_upper(p2, 2), 1e-16);
  EXPECT_THROW(cross_upper_same(p2, 1), domain_error);
  EXPECT_LT(cross_upper_same(params(2.0, 1e-6, 0.01), 5), 1e-6);
}

TEST(Midsize, Bound) {
  const auto p = params(2.0, 0.01, 0.01);
  EXPECT_NEAR(std::log10(midsize_bound(p, 100'000)), -8.84, 0.01);
  EXPECT_LT(midsize_bound(p, 1'000'000), midsize_bound(p, 100'000));
  auto edge = p;
  edge.M = 1.0 / delta_i(p, 0);
  EXPECT_DOUBLE_EQ(midsize_bound(edge, 1000), 1.0);
  edge.M = 0.5 / delta_i(p, 0);
  EXPECT_THROW(midsize_bound(edge, 1000), vacuous_bound_error);
}

TEST(MeanBand, Values) {
  const auto [lo, hi] = mean_band(2.0, 0.1, 100'000);
  EXPECT_NEAR(lo, 18286.9, 0.1);
  EXPECT_NEAR(hi, 22350.7, 0.1);
  const auto [l0, h0] = mean_band(2.0, 1e-12, 1000);
  EXPECT_NEAR(l0, 1000 * q_value(2.0), 1e-6);
  EXPECT_NEAR(h0, l0, 1e-6);
  const auto [ls, hs] = mean_band(0.5, 0.1, 1000);
  EXPECT_NEAR(ls, 900.0, 1e-9);
  EXPECT_NEAR(hs, 1100.0, 1e-9);
  EXPECT_THROW(mean_band(1.0, 0.1, 10), critical_point_error);
}

TEST(VarianceBound, Values) {
  // 10^4 q (1.01) + 4 10^8 q^2 (0.01) with q = 0.2031879.
  EXPECT_NEAR(variance_bound(2.0, 0.01, 10'000), 167193.4, 0.1);
  EXPECT_NEAR(variance_bound(2.0, 1e-12, 10'000), 10'000 * q_value(2.0), 1e-3);
  EXPECT_GE(variance_bound(0.5, 0.5, 3), 0.0);
}

TEST(LayerBounds, Values) {
  auto [m, s] = layer_moment_bounds(0.5, 1);
  EXPECT_DOUBLE_EQ(m, 0.5);
  EXPECT_DOUBLE_EQ(s, 1.0);
  std::tie(m, s) = layer_moment_bounds(0.9, 10);
  EXPECT_NEAR(m, 0.34868, 1e-5);
  EXPECT_NEAR(s, 3.4868, 1e-4);
  EXPECT_NEAR(s, m / (1 - 0.9), 1e-12);
  EXPECT_THROW(layer_moment_bounds(1.0, 1), domain_error);
  EXPECT_THROW(layer_moment_bounds(0.5, 0), domain_error);
}

TEST(C0, Threshold) {
  const double c0 = solve_c0();
  EXPECT_GT(c0, 2.0);
  EXPECT_LT(c0, 8.0);
  EXPECT_NEAR(c0, 5.356694, 1e-5);
  EXPECT_LT(std::abs(c0_residual(c0)), 1e-9);
  EXPECT_LT(c0_residual(5.3566), 0.0);
  EXPECT_GT(c0_residual(5.3567), 0.0);
}

TEST(Bisect, RequiresSignChange) {
  EXPECT_THROW(bisect([](double x) { return x * x + 1; }, -1.0, 1.0, 1e-9), domain_error);
  EXPECT_NEAR(bisect([](double x) { return x - 0.25; }, 0.0, 1.0, 1e-12), 0.25, 1e-12);
}

TEST(SmallCBound, Bounds) {
  const auto b = small_c_bound(0.2, 20.0, 10'000);
  EXPECT_NEAR(b.delta0, 0.609438, 1e-6);
  EXPECT_NEAR(std::log10(b.union_bound / 5.0), -44.757, 0.01);
  EXPECT_NEAR(b.per_vertex * 10'000, b.union_bound, 1e-12 * b.union_bound);
  EXPECT_LT(small_c_bound(0.2, 25.0, 10'000).union_bound, b.union_bound);
  EXPECT_THROW(small_c_bound(std::exp(-1.0), 20.0, 100), vacuous_bound_error);
}
