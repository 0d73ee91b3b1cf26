#pragma once

#include <stdexcept>
#include <string>

namespace ergraph {

/// Argument outside the mathematical domain of an operation (bad vertex,
/// nonpositive C, epsilon outside (0,1), ...).
class domain_error : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// The probability band does not fit in [0,1] for the requested n.
class infeasible_model_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A series whose decay rate is nonpositive was requested.
class divergence_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// C = 1 passed to a bound that only holds away from the critical point.
class critical_point_error : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Bound parameters make the estimate vacuous (e.g. M * delta0 < 1).
class vacuous_bound_error : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Exhaustive enumeration requested on too many edges.
class oracle_size_error : public std::length_error {
 public:
  using std::length_error::length_error;
};

}  // namespace ergraph
