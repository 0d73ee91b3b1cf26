#include <gtest/gtest.h>

#include <cstdlib>
#include <limits>
#include <sstream>

#include "ergraph/json_io.hpp"

using namespace ergraph;
using namespace ergraph::io;

namespace {

std::string first_line(const std::string& s) { return s.substr(0, s.find('\n')); }

}  // namespace

TEST(Format, ShortestRoundTrip) {
  EXPECT_EQ(format_double(0.1), "0.1");
  EXPECT_EQ(format_double(2.0), "2");
  EXPECT_EQ(format_double(std::numeric_limits<double>::infinity()), "inf");
  EXPECT_EQ(format_double(-std::numeric_limits<double>::infinity()), "-inf");
  EXPECT_EQ(format_double(std::nan("")), "nan");
  for (double x : {0.203187869979980, 1.0 / 3.0, 6.02e23, 5e-324}) EXPECT_EQ(std::strtod(format_double(x).c_str(), nullptr), x);
  EXPECT_EQ(number(std::numeric_limits<double>::infinity()), json("inf"));
  EXPECT_EQ(number(1.5), json(1.5));
}

TEST(Json, ModelRoundTrips) {
  for (const auto& m : {EdgeProbModel::homogeneous(2.5), EdgeProbModel::two_class(2.0, AlphaSequence::inverse_sqrt(8.0)),
                        EdgeProbModel::two_class(3.0, AlphaSequence::zero())}) {
    const json j = model_to_json(m);
    const auto back = model_from_json(j);
    EXPECT_EQ(model_to_json(back), j);
    EXPECT_EQ(edge_prob(back, 1024, 0, 1), edge_prob(m, 1024, 0, 1));
  }
}

TEST(Json, TableModel) {
  const json j = json::parse(R"({"kind":"custom_table","table":{"n":4,"p":0.2,"edges":[[1,2,0.6],[3,4,0.4]]}})");
  const auto m = model_from_json(j);
  EXPECT_DOUBLE_EQ(edge_prob(m, 4, 0, 1), 0.6);
  EXPECT_DOUBLE_EQ(edge_prob(m, 4, 2, 3), 0.4);
  EXPECT_DOUBLE_EQ(edge_prob(m, 4, 0, 3), 0.2);
  const auto back = model_from_json(model_to_json(m));
  for (Vertex v = 1; v < 4; ++v) {
    for (Vertex u = 0; u < v; ++u) EXPECT_EQ(edge_prob(back, 4, u, v), edge_prob(m, 4, u, v));
  }
  const auto colex = table_from_json(json::parse(R"({"n":3,"colex":[0.1,0.2,0.3]})"));
  EXPECT_DOUBLE_EQ(colex.at(1, 2), 0.3);
}

TEST(Json, TableRejectsBadInput) {
  EXPECT_THROW(table_from_json(json::parse(R"({"n":3,"edges":[[0,1,0.5]]})")), domain_error);
  EXPECT_THROW(table_from_json(json::parse(R"({"n":3,"edges":[[1,2]]})")), domain_error);
  EXPECT_THROW(table_from_json(json::parse(R"({"n":1})")), domain_error);
  EXPECT_THROW(model_from_json(json::parse(R"({"kind":"bogus"})")), domain_error);
  EXPECT_THROW(alpha_from_json(json::parse(R"({"kind":"bogus"})")), domain_error);
}

TEST(Json, ConfigRoundTripAndOverrides) {
  mc::ExperimentConfig c;
  c.model = EdgeProbModel::two_class(2.0);
  c.n = 4096;
  c.trials = 7;
  c.which_stats = {"events", "pmf"};
  c.exact_ci = true;
  const json j = config_to_json(c);
  EXPECT_EQ(config_to_json(config_from_json(j)), j);

  const auto partial = config_from_json(json::parse(R"({"n": 50})"), c);
  EXPECT_EQ(partial.n, 50u);
  EXPECT_EQ(partial.trials, 7u);
  EXPECT_THROW(config_from_json(json::parse(R"({"nn": 50})")), domain_error);
  EXPECT_THROW(config_from_json(json::parse("[1]")), domain_error);
}

TEST(Json, CustomAlphaIsNotSerialisable) {
  const auto m = EdgeProbModel::two_class(2.0, AlphaSequence::custom([](std::uint64_t) { return 0.0; }));
  EXPECT_THROW(model_to_json(m), domain_error);
}

TEST(Csv, HeadersAndValuesAgreeWithJson) {
  mc::ExperimentConfig c;
  c.n = 500;
  c.trials = 5;
  c.keep_trials = true;
  const auto s = mc::run(c);
  std::ostringstream stats, census, flags, hist;
  write_statistics_csv(stats, s.stats);
  write_census_csv(census, s.trials);
  write_flags_csv(flags, s.trials);
  write_histogram_csv(hist, s.histogram);
  EXPECT_EQ(first_line(stats.str()), "statistic,mean,variance,half_width,ci_lo,ci_hi,trials");
  EXPECT_EQ(first_line(census.str()), "trial,comp_rank,size");
  EXPECT_EQ(first_line(flags.str()), "trial,H1,B,W,V,H2,H3,Y,Z,giant_count,edges");
  EXPECT_EQ(first_line(hist.str()), "size,vertices");

  // The CSV mean of "largest" parses to the same double as the JSON value.
  const json j = summary_to_json(s);
  const std::string text = stats.str();
  const auto pos = text.find("\nlargest,");
  ASSERT_NE(pos, std::string::npos);
  const auto start = pos + 9;
  const double csv_mean = std::stod(text.substr(start, text.find(',', start) - start));
  EXPECT_EQ(csv_mean, j["stats"]["largest"]["mean"].get<double>());
  EXPECT_EQ(j["metadata"]["seed"], 1);
  EXPECT_EQ(j["metadata"]["config"]["n"], 500);
}

TEST(Csv, PmfBoundsLayersHeaders) {
  mc::ExperimentConfig c;
  c.n = 400;
  c.trials = 3;
  std::ostringstream pmf, bounds, layers;
  write_pmf_csv(pmf, mc::estimate_pmf(c, 3));
  theory::TheoryParams tp;
  tp.omega = 0.05;
  write_bounds_csv(bounds, mc::bound_check(c, tp, 1, 3));
  c.model = EdgeProbModel::homogeneous(0.5);
  write_layers_csv(layers, mc::layer_check(c, 3));
  EXPECT_EQ(first_line(pmf.str()), "r,freq,half_width,ci_lo,ci_hi,count,components");
  EXPECT_EQ(first_line(bounds.str()), "r,freq,ci_lo,ci_hi,count,components,lower,upper,status");
  EXPECT_EQ(first_line(layers.str()), "t,mean,mean_se,mean_bound,second_moment,second_se,second_bound,ok");
}
