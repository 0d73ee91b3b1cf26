#include <gtest/gtest.h>

#include <cmath>

#include "ergraph/montecarlo.hpp"
#include "ergraph/oracle.hpp"

using namespace ergraph;
using namespace ergraph::mc;

namespace {

ExperimentConfig homogeneous(double C, std::uint64_t n, std::uint64_t trials, std::uint64_t seed = 1) {
  ExperimentConfig c;
  c.model = EdgeProbModel::homogeneous(C);
  c.n = n;
  c.trials = trials;
  c.seed = seed;
  return c;
}

}  // namespace

TEST(Run, CompleteGraphHistogram) {
  ExperimentConfig c;
  c.model = EdgeProbModel::from_table(ProbTable::homogeneous(4, 1.0));
  c.n = 4;
  c.trials = 1;
  const auto s = run(c);
  EXPECT_EQ(s.histogram, (std::map<std::uint32_t, std::uint64_t>{{4, 4}}));
  EXPECT_EQ(s.stats.at("edges").mean, 6.0);
  EXPECT_EQ(s.stats.at("largest").mean, 4.0);
  EXPECT_EQ(s.stats.at("components").mean, 1.0);
}

TEST(Run, YPlusZIsN) {
  auto c = homogeneous(2.0, 2000, 20);
  c.keep_trials = true;
  const auto s = run(c);
  ASSERT_EQ(s.trials.size(), 20u);
  for (const auto& t : s.trials) EXPECT_EQ(t.flags.Y + t.flags.Z, 2000u);
  EXPECT_NEAR(s.stats.at("Y_over_n").mean + s.stats.at("Z_over_n").mean, 1.0, 1e-12);
  std::uint64_t vertices = 0;
  for (auto& [size, v] : s.histogram) vertices += v;
  EXPECT_EQ(vertices, 2000u * 20u);
}

TEST(Run, ReproducibleAcrossThreadCounts) {
  auto c = homogeneous(1.5, 3000, 12, 5);
  c.keep_trials = true;
  c.threads = 1;
  const auto a = run(c);
  c.threads = 3;
  const auto b = run(c);
  EXPECT_EQ(a.histogram, b.histogram);
  for (const auto& [name, st] : a.stats) {
    EXPECT_EQ(st.mean, b.stats.at(name).mean) << name;
    EXPECT_EQ(st.variance, b.stats.at(name).variance) << name;
  }
  for (std::size_t t = 0; t < a.trials.size(); ++t) EXPECT_EQ(a.trials[t].sizes, b.trials[t].sizes);
}

TEST(Run, SubcriticalHasNoGiant) {
  const auto s = run(homogeneous(0.5, 20000, 20));
  EXPECT_EQ(s.stats.at("W").mean, 0.0);
  EXPECT_EQ(s.stats.at("Y_over_n").mean, 0.0);
  EXPECT_EQ(s.qC, 1.0);
}

TEST(Run, SupercriticalGiantFraction) {
  const auto s = run(homogeneous(2.0, 20000, 20));
  EXPECT_LE(s.stats.at("B").mean, 0.01);
  EXPECT_NEAR(s.stats.at("largest").mean / 20000.0, 1.0 - s.qC, 0.02);
  EXPECT_EQ(s.stats.at("one_giant").mean, 1.0);
}

TEST(Run, RejectsBadConfig) {
  auto c = homogeneous(2.0, 100, 0);
  EXPECT_THROW(run(c), domain_error);
  c = homogeneous(2.0, 100, 1);
  c.which_stats = {"nope"};
  EXPECT_THROW(c.validate(), domain_error);
  c = homogeneous(2.0, 100, 1);
  c.epsilon = 1.0;
  EXPECT_THROW(c.validate(), domain_error);
}

TEST(Pmf, IsolatedVerticesMatchRowOne) {
  const auto c = homogeneous(2.0, 5000, 10);
  const auto p = estimate_pmf(c, 10);
  EXPECT_EQ(p.points[0].count, p.isolated_vertices);
  EXPECT_DOUBLE_EQ(p.points[0].freq.mean, static_cast<double>(p.isolated_vertices) / (5000.0 * 10.0));
  double total = 0.0;
  for (const auto& pt : p.points) {
    total += pt.freq.mean;
    EXPECT_EQ(pt.components * pt.r, pt.count);
  }
  EXPECT_LE(total, 1.0 + 1e-12);
}

TEST(Pmf, IsolatedFrequencyNearLimit) {
  const auto p = estimate_pmf(homogeneous(2.0, 100000, 10), 1);
  EXPECT_NEAR(p.points[0].freq.mean, std::exp(-2.0), 0.02 * std::exp(-2.0));
}

TEST(Pmf, VertexOneMatchesOracle) {
  ProbTable t = ProbTable::homogeneous(5, 0.3);
  t.set(0, 1, 0.7);
  t.set(2, 4, 0.1);
  ExperimentConfig c;
  c.model = EdgeProbModel::from_table(t);
  c.n = 5;
  c.trials = 200000;
  c.seed = 3;
  const auto p = estimate_pmf(c, 5, true);
  const auto law = oracle::exact_component_law(t, 0);
  for (int r = 0; r < 5; ++r) {
    const double sigma = std::sqrt(law[r] * (1 - law[r]) / 200000.0);
    EXPECT_NEAR(p.points[r].freq.mean, law[r], 4 * sigma + 1e-12) << "r=" << r + 1;
  }
}

TEST(Pmf, RejectsRMaxAboveN) { EXPECT_THROW(estimate_pmf(homogeneous(2.0, 10, 1), 11), domain_error); }

TEST(BoundCheck, SmallRPasses) {
  theory::TheoryParams tp;
  tp.omega = 0.05;
  const auto rep = bound_check(homogeneous(2.0, 20000, 20), tp, 1, 3);
  ASSERT_EQ(rep.rows.size(), 3u);
  EXPECT_EQ(rep.rows[0].status, CheckStatus::kOk);
  EXPECT_EQ(rep.failures, 0u);
}

TEST(BoundCheck, ViolationsAreWarningsBelowHardN) {
  // omega tiny and eps large make the sandwich narrow; at n = 200 any
  // violation must be reported as a warning, never a failure.
  theory::TheoryParams tp;
  tp.omega = 1e-6;
  auto c = homogeneous(2.0, 200, 200);
  c.epsilon = 0.001;
  const auto rep = bound_check(c, tp, 1, 5);
  EXPECT_EQ(rep.failures, 0u);
  for (const auto& row : rep.rows) EXPECT_NE(row.status, CheckStatus::kFailure);
}

TEST(BoundCheck, ThinRowsAreNotJudged) {
  theory::TheoryParams tp;
  tp.omega = 0.05;
  const auto rep = bound_check(homogeneous(2.0, 1000, 2), tp, 15, 15, 50);
  EXPECT_EQ(rep.rows[0].status, CheckStatus::kInsufficientData);
}

TEST(BoundCheck, VacuousParametersThrow) {
  theory::TheoryParams tp;
  tp.omega = 0.5;
  auto c = homogeneous(2.0, 1000, 2);
  c.epsilon = 0.3;
  EXPECT_THROW(bound_check(c, tp, 1, 3), vacuous_bound_error);
  tp.omega = 0.05;
  EXPECT_THROW(bound_check(homogeneous(2.0, 1000, 2), tp, 0, 3), domain_error);
}

TEST(LayerCheck, RefusesNearCritical) {
  EXPECT_THROW(layer_check(homogeneous(1.0, 1000, 2), 5), domain_error);
}

TEST(LayerCheck, FirstLayerMean) {
  const auto rep = layer_check(homogeneous(0.5, 5000, 400), 5, 4);
  EXPECT_EQ(rep.samples, 1600u);
  ASSERT_EQ(rep.rows.size(), 5u);
  // #N_1 is the degree: Binomial(n - 1, C/n).
  EXPECT_NEAR(rep.rows[0].mean.mean, 0.5 * 4999.0 / 5000.0, 4 * std::sqrt(0.5 / 1600.0));
  EXPECT_TRUE(rep.all_ok);
  EXPECT_DOUBLE_EQ(rep.rows[1].mean_bound, 0.25);
}

TEST(CouplingExperiment, ZeroAlphaHasNoDif) {
  const auto rep = coupling_experiment(900, 10, 2, 2.0, 1, 0.0);
  EXPECT_EQ(rep.dif.mean, 0.0);
  EXPECT_EQ(rep.dif.variance, 0.0);
  EXPECT_TRUE(rep.coupling_monotone);
  EXPECT_EQ(rep.dif_in_window.mean, 0.0);
}

TEST(CouplingExperiment, ReproducibleAcrossThreads) {
  const auto a = coupling_experiment(1024, 16, 9, 2.0, 1);
  const auto b = coupling_experiment(1024, 16, 9, 2.0, 4);
  EXPECT_EQ(a.dif.mean, b.dif.mean);
  EXPECT_EQ(a.max_degree.mean, b.max_degree.mean);
  EXPECT_EQ(a.sandwich.mean, b.sandwich.mean);
}
