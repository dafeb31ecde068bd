#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "trm/grid.hpp"

namespace trm {

/// Right-continuous piecewise-constant nonnegative rate signal:
/// `initial` until the first switch, then switches[k].second on
/// [switches[k].first, switches[k+1].first).
class StepSignal {
 public:
  StepSignal(double initial = 0.0);
  StepSignal(double initial, std::vector<std::pair<double, double>> switches);

  double operator()(double t) const noexcept;
  double max_value() const noexcept;

  double initial() const noexcept { return initial_; }
  const std::vector<std::pair<double, double>>& switches() const noexcept { return switches_; }

 private:
  double initial_;
  std::vector<std::pair<double, double>> switches_;
};

/// Closed road interval [lower, upper] covered by a ramp.
struct RampInterval {
  double lower;
  double upper;
};

/// Per-cell coverage fractions (overlap length / dx). Intervals must be
/// pairwise disjoint.
std::vector<double> coverage_weights(const Grid& grid, std::span<const RampInterval> intervals);

/// On/off-ramp source and sink: cell i receives
///   on_i * u_on(t) * (rho_max - rho_i) - off_i * u_off(t) * rho_i.
class RampConfig {
 public:
  RampConfig(std::vector<double> on_weights, std::vector<double> off_weights,
             StepSignal u_on, StepSignal u_off);

  static RampConfig from_intervals(const Grid& grid, std::span<const RampInterval> on,
                                   std::span<const RampInterval> off, StepSignal u_on,
                                   StepSignal u_off);

  std::size_t size() const noexcept { return on_.size(); }
  double on_weight(std::size_t i) const noexcept { return on_[i]; }
  double off_weight(std::size_t i) const noexcept { return off_[i]; }
  std::span<const double> on_weights() const noexcept { return on_; }
  std::span<const double> off_weights() const noexcept { return off_; }
  double u_on(double t) const noexcept { return u_on_(t); }
  double u_off(double t) const noexcept { return u_off_(t); }
  const StepSignal& on_signal() const noexcept { return u_on_; }
  const StepSignal& off_signal() const noexcept { return u_off_; }

  /// max_i (on_i * u_on + off_i * u_off) at time t; the stiffness the ramp
  /// terms add to an explicit step.
  double max_rate(double t) const noexcept;

  double source(std::size_t i, double rho, double rho_max, double t) const noexcept {
    return on_[i] * u_on_(t) * (rho_max - rho) - off_[i] * u_off_(t) * rho;
  }

 private:
  std::vector<double> on_;
  std::vector<double> off_;
  StepSignal u_on_;
  StepSignal u_off_;
};

}  // namespace trm
