#include "trm/ramps.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "trm/errors.hpp"

namespace trm {

StepSignal::StepSignal(double initial) : StepSignal(initial, {}) {}

StepSignal::StepSignal(double initial, std::vector<std::pair<double, double>> switches)
    : initial_(initial), switches_(std::move(switches)) {
  if (!(initial_ >= 0.0) || !std::isfinite(initial_)) {
    throw DomainError("ramp rates must be nonnegative and finite");
  }
  for (std::size_t k = 0; k < switches_.size(); ++k) {
    if (!(switches_[k].second >= 0.0) || !std::isfinite(switches_[k].second)) {
      throw DomainError("ramp rates must be nonnegative and finite");
    }
    if (k > 0 && !(switches_[k].first > switches_[k - 1].first)) {
      throw std::invalid_argument("ramp switch times must be strictly increasing");
    }
  }
}

double StepSignal::operator()(double t) const noexcept {
  auto it = std::upper_bound(switches_.begin(), switches_.end(), t,
                             [](double value, const auto& s) { return value < s.first; });
  return it == switches_.begin() ? initial_ : std::prev(it)->second;
}

double StepSignal::max_value() const noexcept {
  double m = initial_;
  for (const auto& s : switches_) m = std::max(m, s.second);
  return m;
}

std::vector<double> coverage_weights(const Grid& grid, std::span<const RampInterval> intervals) {
  std::vector<RampInterval> sorted(intervals.begin(), intervals.end());
  std::sort(sorted.begin(), sorted.end(),
            [](const RampInterval& a, const RampInterval& b) { return a.lower < b.lower; });
  for (std::size_t k = 0; k < sorted.size(); ++k) {
    if (!(sorted[k].upper >= sorted[k].lower)) {
      throw std::invalid_argument("ramp interval has upper < lower");
    }
    if (k > 0 && sorted[k].lower < sorted[k - 1].upper) {
      throw std::invalid_argument("ramp intervals must be disjoint");
    }
  }
  std::vector<double> weights(grid.n_cells(), 0.0);
  for (std::size_t i = 0; i < weights.size(); ++i) {
    const double a = grid.left_edge(i);
    const double b = grid.right_edge(i);
    double covered = 0.0;
    for (const auto& iv : sorted) {
      covered += std::max(0.0, std::min(b, iv.upper) - std::max(a, iv.lower));
    }
    weights[i] = std::clamp(covered / (b - a), 0.0, 1.0);
  }
  return weights;
}

RampConfig::RampConfig(std::vector<double> on_weights, std::vector<double> off_weights,
                       StepSignal u_on, StepSignal u_off)
    : on_(std::move(on_weights)),
      off_(std::move(off_weights)),
      u_on_(std::move(u_on)),
      u_off_(std::move(u_off)) {
  if (on_.size() != off_.size()) {
    throw std::invalid_argument("on/off ramp weights differ in length");
  }
  auto in_unit = [](double w) { return w >= 0.0 && w <= 1.0; };
  if (!std::all_of(on_.begin(), on_.end(), in_unit) ||
      !std::all_of(off_.begin(), off_.end(), in_unit)) {
    throw DomainError("ramp coverage weights must lie in [0, 1]");
  }
}

RampConfig RampConfig::from_intervals(const Grid& grid, std::span<const RampInterval> on,
                                      std::span<const RampInterval> off, StepSignal u_on,
                                      StepSignal u_off) {
  return RampConfig(coverage_weights(grid, on), coverage_weights(grid, off), std::move(u_on),
                    std::move(u_off));
}

double RampConfig::max_rate(double t) const noexcept {
  const double a = u_on_(t);
  const double b = u_off_(t);
  double m = 0.0;
  for (std::size_t i = 0; i < on_.size(); ++i) {
    m = std::max(m, on_[i] * a + off_[i] * b);
  }
  return m;
}

}  // namespace trm
