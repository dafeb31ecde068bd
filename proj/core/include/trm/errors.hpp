#pragma once

#include <stdexcept>
#include <string>

namespace trm {

/// A density, coordinate or parameter lies outside the admissible set.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A numerical flux was configured so that it is not monotone.
class MonotonicityError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Malformed reaction network input (bad topology, rates, species).
class NetworkError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Base of every run-time guard that trips while integrating.
class NumericalGuard : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class CflViolation : public NumericalGuard {
 public:
  CflViolation(double dt, double bound)
      : NumericalGuard("time step " + std::to_string(dt) +
                       " exceeds the CFL bound " + std::to_string(bound)),
        dt_(dt),
        bound_(bound) {}

  double dt() const noexcept { return dt_; }
  double bound() const noexcept { return bound_; }

 private:
  double dt_;
  double bound_;
};

/// Step-halving disagreement or a bound overshoot larger than round-off.
class ToleranceFailure : public NumericalGuard {
 public:
  using NumericalGuard::NumericalGuard;
};

/// A Lyapunov evaluation met a state with a nonpositive density.
class InteriorViolation : public NumericalGuard {
 public:
  using NumericalGuard::NumericalGuard;
};

}  // namespace trm
