#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <string>
#include <utility>

#include "ergraph/errors.hpp"

namespace ergraph::theory {

/// Parameters shared by the tree-counting bounds.
struct TheoryParams {
  double C = 2.0;
  double epsilon = 0.01;
  double omega = 0.01;
  double gamma = 0.05;
  double M = 10.0;

  void validate() const {
    if (!(C > 0.0)) throw domain_error("C must be positive");
    if (!(epsilon > 0.0 && epsilon < 1.0)) throw domain_error("epsilon must be in (0,1)");
    if (!(omega > 0.0)) throw domain_error("omega must be positive");
    if (!(gamma > 0.0 && gamma < 1.0)) throw domain_error("gamma must be in (0,1)");
    if (!(M > 0.0)) throw domain_error("M must be positive");
  }
};

/// A truncated series: value of the partial sum, number of terms summed and
/// a certified bound on the neglected tail.
struct SeriesResult {
  double value = 0.0;
  std::uint64_t terms_used = 0;
  double tail_bound = 0.0;
  bool converged = false;  ///< tail_bound < requested tolerance
};

inline constexpr double kHalfLog2Pi = 0.91893853320467274178;  // ln(2 pi)/2
inline constexpr std::uint64_t kMaxSeriesTerms = 1'000'000;

/// Kahan-compensated accumulator.
class CompensatedSum {
 public:
  void add(double x) noexcept {
    const double y = x - carry_;
    const double t = sum_ + y;
    carry_ = (t - sum_) - y;
    sum_ = t;
  }
  void scale(double f) noexcept {
    sum_ *= f;
    carry_ *= f;
  }
  double value() const noexcept { return sum_; }

 private:
  double sum_ = 0.0;
  double carry_ = 0.0;
};

// ---------------------------------------------------------------------------
// Decay rates
// ---------------------------------------------------------------------------

/// delta(C) = C - 1 - ln C; zero only at C = 1.
inline double delta(double C) {
  if (!(C > 0.0)) throw domain_error("delta: C must be positive");
  return C - 1.0 - std::log(C);
}

/// Perturbed rates: delta0 = delta - C eps - omega, delta1 = delta - 2 C eps -
/// omega, delta2 = delta - ln(1 - eps) + omega.
inline double delta_i(const TheoryParams& p, int which) {
  p.validate();
  const double d = delta(p.C);
  switch (which) {
    case 0:
      return d - p.C * p.epsilon - p.omega;
    case 1:
      return d - 2.0 * p.C * p.epsilon - p.omega;
    case 2:
      return d - std::log1p(-p.epsilon) + p.omega;
    default:
      throw domain_error("delta_i: which must be 0, 1 or 2");
  }
}

// ---------------------------------------------------------------------------
// Cayley terms
// ---------------------------------------------------------------------------

/// s(r) = ln r! - (r ln r - r + ln(2 pi r)/2), the Stirling remainder.
/// Positive and below 1/(12 r).
inline double stirling_remainder(std::uint64_t r) {
  if (r == 0) throw domain_error("stirling_remainder: r must be >= 1");
  const double x = static_cast<double>(r);
  if (r < 10) {
    static const auto table = [] {
      std::array<double, 10> t{};
      for (int k = 1; k < 10; ++k) {
        const double y = k;
        t[k] = std::lgamma(y + 1.0) - (y * std::log(y) - y + kHalfLog2Pi + 0.5 * std::log(y));
      }
      return t;
    }();
    return table[r];
  }
  const double inv = 1.0 / x;
  const double inv2 = inv * inv;
  return inv * (1.0 / 12.0 - inv2 * (1.0 / 360.0 - inv2 * (1.0 / 1260.0 - inv2 / 1680.0)));
}

/// ln( T_r e^{-r} e^{-decay r} / (C (r-1)!) ) with T_r = r^{r-2} (T_1 = 1).
///
/// Uses ln T_r - ln (r-1)! = r - 1.5 ln r - ln(2 pi)/2 - s(r), which is
/// exact and avoids subtracting two numbers of size r ln r.
inline double log_decay_term(std::uint64_t r, double decay, double C) {
  if (r == 0) throw domain_error("term index must be >= 1");
  const double x = static_cast<double>(r);
  return -std::log(C) - kHalfLog2Pi - 1.5 * std::log(x) - stirling_remainder(r) - decay * x;
}

/// ln( T_r C^{r-1} e^{-C r} / (r-1)! ), the r-th term of q(C).
inline double log_tree_term(std::uint64_t r, double C) {
  if (r < 1) throw domain_error("log_tree_term: r must be >= 1");
  if (!(C > 0.0)) throw domain_error("log_tree_term: C must be positive");
  if (r == 1) return -C;
  return log_decay_term(r, delta(C), C);
}

/// ln T_r from Cayley's formula.
inline double log_cayley(std::uint64_t r) {
  if (r < 1) throw domain_error("log_cayley: r must be >= 1");
  return r == 1 ? 0.0 : (static_cast<double>(r) - 2.0) * std::log(static_cast<double>(r));
}

/// Certified bound on sum_{r > N} scale (2 pi)^{-1/2} r^{-3/2} e^{-decay r}.
///
/// Every term of the form T_r e^{-r} e^{-decay r} / (C (r-1)!) is at most the
/// summand with scale = 1/C, because s(r) > 0. Returns the smaller of a
/// geometric bound and an integral bound.
inline double tail_envelope(std::uint64_t N, double decay, double scale) {
  if (decay < 0.0) throw divergence_error("tail_envelope: negative decay rate");
  const double c = scale / std::sqrt(2.0 * std::numbers::pi);
  if (N == 0) return c * std::exp(-decay) + tail_envelope(1, decay, scale);
  const double x = static_cast<double>(N);
  // sum_{r>N} r^{-3/2} e^{-d r} <= e^{-d N} int_N^inf x^{-3/2} dx
  double bound = 2.0 * std::exp(-decay * x) / std::sqrt(x);
  if (decay > 0.0) {
    // ... <= (N+1)^{-3/2} e^{-d(N+1)} / (1 - e^{-d})
    const double geometric = std::exp(-decay * (x + 1.0)) / ((x + 1.0) * std::sqrt(x + 1.0)) / -std::expm1(-decay);
    bound = std::min(bound, geometric);
  }
  // Inflate slightly so float rounding cannot make the bound undershoot.
  return c * bound * (1.0 + 1e-10);
}

/// Certified upper bound on R_N(C) = sum_{r > N} T_r C^{r-1} e^{-C r} / (r-1)!.
///
/// R_N(C) is the probability that a Poisson(C) branching process has finite
/// total progeny above N, which never exceeds the same probability at C = 1,
/// so the critical envelope caps the bound near C = 1.
inline double remainder(std::uint64_t N, double C) {
  const double own = tail_envelope(N, delta(C), 1.0 / C);
  return C == 1.0 ? own : std::min(own, tail_envelope(N, 0.0, 1.0));
}

namespace detail {

/// Sums exp(log_term(r)) for r = first.. with a running-maximum rescale, until
/// tail(r) < tol or max_terms terms have been used.
template <class LogTerm, class Tail>
SeriesResult sum_log_series(std::uint64_t first, LogTerm&& log_term, Tail&& tail, double tol,
                            std::uint64_t max_terms) {
  CompensatedSum scaled;
  double ref = -INFINITY;
  SeriesResult out;
  for (std::uint64_t r = first;; ++r) {
    const double lt = log_term(r);
    if (lt > ref) {
      if (std::isfinite(ref)) scaled.scale(std::exp(ref - lt));
      ref = lt;
    }
    scaled.add(std::exp(lt - ref));
    ++out.terms_used;
    out.tail_bound = tail(r);
    if (out.tail_bound < tol) {
      out.converged = true;
      break;
    }
    if (out.terms_used >= max_terms) break;
  }
  out.value = scaled.value() * std::exp(ref);
  return out;
}

}  // namespace detail

/// q(C) = sum_{r >= 1} T_r C^{r-1} e^{-C r} / (r-1)!, summed until the
/// certified tail drops below `tol`. At C = 1 the tail decays like N^{-1/2};
/// the sum then stops at max_terms with converged = false.
inline SeriesResult q_series(double C, double tol, std::uint64_t max_terms = kMaxSeriesTerms) {
  if (!(C > 0.0)) throw domain_error("q_series: C must be positive");
  if (!(tol > 0.0)) throw domain_error("q_series: tol must be positive");
  const double d = delta(C);
  return detail::sum_log_series(
      1, [C](std::uint64_t r) { return log_tree_term(r, C); },
      [d, C](std::uint64_t r) { return tail_envelope(r, d, 1.0 / C); }, tol, max_terms);
}

/// Sum of the first N terms of q(C).
inline double q_partial_sum(double C, std::uint64_t N) {
  CompensatedSum s;
  for (std::uint64_t r = 1; r <= N; ++r) s.add(std::exp(log_tree_term(r, C)));
  return s.value();
}

/// Smallest root in (0, 1] of q = exp(-C (1 - q)).
///
/// Iterates q <- exp(-C (1 - q)) from q = 0; the iterates increase
/// monotonically to the smallest root. Stops when successive iterates differ
/// by less than tol. C <= 1 returns 1.
inline double q_fixed_point(double C, double tol) {
  if (!(C > 0.0)) throw domain_error("q_fixed_point: C must be positive");
  if (!(tol > 0.0)) throw domain_error("q_fixed_point: tol must be positive");
  if (C <= 1.0) return 1.0;
  double q = 0.0;
  for (std::uint64_t it = 0; it < 100'000'000; ++it) {
    const double next = std::exp(-C * (1.0 - q));
    if (std::abs(next - q) < tol) return next;
    q = next;
  }
  return q;
}

/// q_i(C, eps, omega) = e^{-C} + sum_{r >= 2} T_r e^{-r} e^{-delta_i r} / (C (r-1)!).
inline SeriesResult q_i_series(int which, const TheoryParams& p, double tol,
                               std::uint64_t max_terms = kMaxSeriesTerms) {
  if (!(tol > 0.0)) throw domain_error("q_i_series: tol must be positive");
  const double d = delta_i(p, which);
  if (!(d > 0.0)) {
    throw divergence_error("q_i_series: delta_" + std::to_string(which) + " = " + std::to_string(d) +
                           " is not positive");
  }
  const double C = p.C;
  auto res = detail::sum_log_series(
      2, [d, C](std::uint64_t r) { return log_decay_term(r, d, C); },
      [d, C](std::uint64_t r) { return tail_envelope(r, d, 1.0 / C); }, tol, max_terms);
  res.value += std::exp(-C);
  res.terms_used += 1;
  return res;
}

// ---------------------------------------------------------------------------
// Component-size bounds
// ---------------------------------------------------------------------------

namespace detail {

inline void require_noncritical(double C, const char* what) {
  if (C == 1.0) throw critical_point_error(std::string(what) + ": requires C != 1");
}

inline double require_positive_rate(const TheoryParams& p, int which, const char* what) {
  const double d = delta_i(p, which);
  if (!(d > 0.0)) {
    throw vacuous_bound_error(std::string(what) + ": delta_" + std::to_string(which) + " = " + std::to_string(d) +
                              " must be positive");
  }
  return d;
}

}  // namespace detail

/// Upper bound on P(#E_i = r) for r <= eps n:
/// T_r e^{-r} e^{-delta0 r} / (C (r-1)!).
inline double component_law_upper(const TheoryParams& p, std::uint64_t r) {
  p.validate();
  detail::require_noncritical(p.C, "component_law_upper");
  const double d0 = detail::require_positive_rate(p, 0, "component_law_upper");
  return std::exp(log_decay_term(r, d0, p.C));
}

/// Lower bound on P(#E_i = r) for r <= eps n:
/// T_r e^{-r} e^{-delta2 r} e^{-2 eps + 2 omega/3} / (C (1 - eps) (r-1)!).
inline double component_law_lower(const TheoryParams& p, std::uint64_t r) {
  p.validate();
  detail::require_noncritical(p.C, "component_law_lower");
  const double d2 = delta_i(p, 2);
  return std::exp(log_decay_term(r, d2, p.C) - std::log1p(-p.epsilon) - 2.0 * p.epsilon + 2.0 * p.omega / 3.0);
}

/// Bound on P(#E_i = r1, #E_j = r2, E_i != E_j): the product of the two
/// single-vertex factors at rate delta1.
inline double cross_upper_distinct(const TheoryParams& p, std::uint64_t r1, std::uint64_t r2) {
  p.validate();
  detail::require_noncritical(p.C, "cross_upper_distinct");
  const double d1 = detail::require_positive_rate(p, 1, "cross_upper_distinct");
  return std::exp(log_decay_term(r1, d1, p.C) + log_decay_term(r2, d1, p.C));
}

/// Bound on P(#E_i = r1, E_i = E_j) for r1 >= 2: 2 eps times component_law_upper(r1).
inline double cross_upper_same(const TheoryParams& p, std::uint64_t r1) {
  if (r1 < 2) throw domain_error("cross_upper_same: r1 must be >= 2");
  return 2.0 * p.epsilon * component_law_upper(p, r1);
}

/// Union bound n^{1 - M delta0} on the probability of a component with size
/// in [M ln n + 1, eps n].
inline double midsize_bound(const TheoryParams& p, std::uint64_t n) {
  p.validate();
  detail::require_noncritical(p.C, "midsize_bound");
  const double d0 = detail::require_positive_rate(p, 0, "midsize_bound");
  const double exponent = p.M * d0;
  if (std::abs(exponent - 1.0) <= 1e-12) return 1.0;
  if (exponent < 1.0) {
    throw vacuous_bound_error("midsize_bound: M * delta0 = " + std::to_string(exponent) + " < 1");
  }
  return std::pow(static_cast<double>(n), 1.0 - exponent);
}

/// q(C) to near machine precision, as used by the bounds below.
inline double q_value(double C) { return q_fixed_point(C, 1e-15); }

/// (n q (1 - gamma), n q (1 + gamma)): the band for E Z_n(eps).
inline std::pair<double, double> mean_band(double C, double gamma, std::uint64_t n) {
  detail::require_noncritical(C, "mean_band");
  if (!(gamma > 0.0 && gamma < 1.0)) throw domain_error("mean_band: gamma must be in (0,1)");
  const double nq = static_cast<double>(n) * q_value(C);
  return {nq * (1.0 - gamma), nq * (1.0 + gamma)};
}

/// n q (1 + gamma) + 4 n^2 q^2 gamma: the bound on var Z_n(eps).
inline double variance_bound(double C, double gamma, std::uint64_t n) {
  detail::require_noncritical(C, "variance_bound");
  if (!(gamma > 0.0 && gamma < 1.0)) throw domain_error("variance_bound: gamma must be in (0,1)");
  const double q = q_value(C);
  const double nd = static_cast<double>(n);
  return nd * q * (1.0 + gamma) + 4.0 * nd * nd * q * q * gamma;
}

/// Bounds on the t-th BFS layer in the subcritical regime:
/// E #N_t <= C_u^t and E (#N_t)^2 <= C_u^t / (1 - C_u).
inline std::pair<double, double> layer_moment_bounds(double C_u, std::uint64_t t) {
  if (!(C_u >= 0.0 && C_u < 1.0)) throw domain_error("layer_moment_bounds: C_u must be in [0,1)");
  if (t < 1) throw domain_error("layer_moment_bounds: t must be >= 1");
  const double mean = std::pow(C_u, static_cast<double>(t));
  return {mean, mean / (1.0 - C_u)};
}

// ---------------------------------------------------------------------------
// Thresholds
// ---------------------------------------------------------------------------

/// Bisection for a sign change of f on [lo, hi], to bracket width xtol.
template <class F>
double bisect(F&& f, double lo, double hi, double xtol) {
  double flo = f(lo);
  const double fhi = f(hi);
  if (flo == 0.0) return lo;
  if (fhi == 0.0) return hi;
  if ((flo < 0.0) == (fhi < 0.0)) throw domain_error("bisect: no sign change on the bracket");
  while (hi - lo > xtol) {
    const double mid = lo + (hi - lo) / 2.0;
    if (mid <= lo || mid >= hi) break;
    const double fm = f(mid);
    if (fm == 0.0) return mid;
    if ((fm < 0.0) == (flo < 0.0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return lo + (hi - lo) / 2.0;
}

/// delta0(C, 1/2, 0) = C/2 - 1 - ln C.
inline double c0_residual(double C) { return C / 2.0 - 1.0 - std::log(C); }

/// The unique C0 > 1 with C0/2 - 1 - ln C0 = 0, bracketed in [2, 8].
inline double solve_c0() { return bisect(c0_residual, 2.0, 8.0, 1e-12); }

struct SmallCBound {
  double delta0 = 0.0;       ///< ln(e^{-1}/C)
  double per_vertex = 0.0;   ///< P(#E_i >= M ln n) <= n^{-M delta0} / C
  double union_bound = 0.0;  ///< n^{1 - M delta0} / C
};

/// Bounds for C < 1/e, where delta0(C, 1, 0) = ln(e^{-1}/C) > 0 lets the
/// tree-counting bound hold for every r <= n.
inline SmallCBound small_c_bound(double C, double M, std::uint64_t n) {
  if (!(C > 0.0)) throw domain_error("small_c_bound: C must be positive");
  if (!(C < std::exp(-1.0))) throw vacuous_bound_error("small_c_bound: requires C < 1/e");
  if (!(M > 0.0)) throw domain_error("small_c_bound: M must be positive");
  SmallCBound b;
  b.delta0 = -1.0 - std::log(C);
  const double log_n = std::log(static_cast<double>(n));
  b.per_vertex = std::exp(-M * b.delta0 * log_n) / C;
  b.union_bound = std::exp((1.0 - M * b.delta0) * log_n) / C;
  return b;
}

}  // namespace ergraph::theory
