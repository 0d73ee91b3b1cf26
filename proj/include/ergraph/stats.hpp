#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <span>
#include <string>
#include <tuple>
#include <utility>

#include <boost/math/distributions/beta.hpp>

namespace ergraph {

inline constexpr double kZ95 = 1.959963984540054;

/// Summary of one statistic over independent trials.
struct Statistic {
  double mean = 0.0;
  double variance = 0.0;    ///< unbiased sample variance; 0 for a single trial
  double half_width = 0.0;  ///< 95% normal-approximation half-width of the mean
  double ci_lo = 0.0;
  double ci_hi = 0.0;
  std::uint64_t trials = 0;
  bool is_frequency = false;

  /// Standard error of the mean.
  double std_error() const noexcept {
    return trials == 0 ? 0.0 : std::sqrt(variance / static_cast<double>(trials));
  }
};

/// Mean, variance and 95% interval of per-trial values (two-pass, fixed order).
inline Statistic summarize(std::span<const double> values) {
  Statistic s;
  s.trials = values.size();
  if (values.empty()) return s;
  double sum = 0.0;
  for (double v : values) sum += v;
  s.mean = sum / static_cast<double>(values.size());
  if (values.size() > 1) {
    double ss = 0.0;
    for (double v : values) ss += (v - s.mean) * (v - s.mean);
    s.variance = ss / static_cast<double>(values.size() - 1);
    s.half_width = kZ95 * std::sqrt(s.variance / static_cast<double>(values.size()));
  } else {
    s.half_width = std::numeric_limits<double>::infinity();
  }
  s.ci_lo = s.mean - s.half_width;
  s.ci_hi = s.mean + s.half_width;
  return s;
}

/// Clopper-Pearson 95% interval for k successes in t trials.
inline std::pair<double, double> clopper_pearson(std::uint64_t k, std::uint64_t t) {
  using boost::math::beta_distribution;
  using boost::math::quantile;
  const double alpha = 0.05;
  const double kd = static_cast<double>(k);
  const double td = static_cast<double>(t);
  const double lo = k == 0 ? 0.0 : quantile(beta_distribution<double>(kd, td - kd + 1.0), alpha / 2.0);
  const double hi = k == t ? 1.0 : quantile(beta_distribution<double>(kd + 1.0, td - kd), 1.0 - alpha / 2.0);
  return {lo, hi};
}

/// Frequency of a 0/1 outcome. The default interval is the normal (Wald)
/// one on the trial mean; `exact` switches to Clopper-Pearson.
inline Statistic summarize_frequency(std::uint64_t successes, std::uint64_t trials, bool exact = false) {
  Statistic s;
  s.is_frequency = true;
  s.trials = trials;
  if (trials == 0) return s;
  const double t = static_cast<double>(trials);
  s.mean = static_cast<double>(successes) / t;
  s.variance = trials > 1 ? s.mean * (1.0 - s.mean) * t / (t - 1.0) : 0.0;
  s.half_width = kZ95 * std::sqrt(s.mean * (1.0 - s.mean) / t);
  if (exact) {
    std::tie(s.ci_lo, s.ci_hi) = clopper_pearson(successes, trials);
    s.half_width = std::max(s.mean - s.ci_lo, s.ci_hi - s.mean);
  } else {
    s.ci_lo = std::max(0.0, s.mean - s.half_width);
    s.ci_hi = std::min(1.0, s.mean + s.half_width);
  }
  return s;
}

}  // namespace ergraph
