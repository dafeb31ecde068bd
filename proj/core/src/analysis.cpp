#include "trm/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "trm/errors.hpp"

namespace trm {

double spatial_error(std::span<const double> rho, std::span<const double> oracle, double dx) {
  if (rho.size() != oracle.size()) {
    throw std::invalid_argument("state and oracle differ in length");
  }
  double sum = 0.0;
  for (std::size_t i = 0; i < rho.size(); ++i) sum += std::abs(rho[i] - oracle[i]);
  return dx * sum;
}

std::string ErrorReport::csv_header() { return "scheme,N,l1,linf"; }

std::string ErrorReport::csv_row() const {
  char buf[128];
  std::snprintf(buf, sizeof buf, "%s,%zu,%.6g,%.6g", scheme.c_str(), n_cells, l1, linf);
  return buf;
}

ErrorReport error_norms(std::string scheme, std::size_t n_cells, std::span<const double> times,
                        std::span<const double> errors) {
  if (times.empty() || times.size() != errors.size()) {
    throw std::invalid_argument("error_norms needs matching, nonempty samples");
  }
  ErrorReport report{std::move(scheme), n_cells, 0.0, errors[0]};
  for (std::size_t k = 1; k < times.size(); ++k) {
    report.l1 += 0.5 * (errors[k] + errors[k - 1]) * (times[k] - times[k - 1]);
    report.linf = std::max(report.linf, errors[k]);
  }
  return report;
}

ErrorReport error_norms(std::string scheme, const Trajectory& trajectory, const Grid& grid,
                        const OracleFn& oracle) {
  if (trajectory.empty()) {
    throw std::invalid_argument("error_norms on an empty trajectory");
  }
  std::vector<double> times;
  std::vector<double> errors;
  times.reserve(trajectory.size());
  errors.reserve(trajectory.size());
  for (const auto& state : trajectory.states) {
    times.push_back(state.t());
    errors.push_back(spatial_error(state.rho(), oracle(state.t()), grid.dx()));
  }
  return error_norms(std::move(scheme), grid.n_cells(), times, errors);
}

double total_variation(std::span<const double> rho, Topology topology) {
  double tv = 0.0;
  for (std::size_t i = 0; i + 1 < rho.size(); ++i) tv += std::abs(rho[i + 1] - rho[i]);
  if (topology == Topology::Ring && rho.size() > 1) tv += std::abs(rho.front() - rho.back());
  return tv;
}

double ring_equilibrium(std::span<const double> rho) {
  if (rho.empty()) throw std::invalid_argument("empty state");
  double sum = 0.0;
  for (double v : rho) sum += v;
  return sum / static_cast<double>(rho.size());
}

namespace {

void require_interior(std::span<const double> rho) {
  for (std::size_t i = 0; i < rho.size(); ++i) {
    if (!(rho[i] > 0.0)) {
      throw InteriorViolation("Lyapunov function needs rho_i > 0, got rho_" +
                              std::to_string(i + 1) + " = " + std::to_string(rho[i]));
    }
  }
}

}  // namespace

double lyapunov_value(std::span<const double> rho) {
  require_interior(rho);
  const double bar = ring_equilibrium(rho);
  double v = 0.0;
  for (double r : rho) v += r * (std::log(r / bar) - 1.0);
  return v + static_cast<double>(rho.size()) * bar;
}

double lyapunov_bound(std::span<const double> rho, const FluxModel& model, double dx) {
  const std::size_t n = rho.size();
  double sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double d = rho[i] - rho[(i + 1) % n];
    sum += d * d;
  }
  return -model.omega() / (2.0 * dx) * sum;
}

double lyapunov_rate(std::span<const double> rho, const FluxModel& model, double dx) {
  require_interior(rho);
  const std::size_t n = rho.size();
  const double bar = ring_equilibrium(rho);
  const double rho_max = model.rho_max();
  double rate = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double prev = rho[(i + n - 1) % n];
    const double next = rho[(i + 1) % n];
    const double dot =
        model.omega() / dx * (prev * (rho_max - rho[i]) - rho[i] * (rho_max - next));
    rate += std::log(rho[i] / bar) * dot;
  }
  return rate;
}

LyapunovReport lyapunov_decay_check(const Trajectory& trajectory, const FluxModel& model,
                                    double dx, const LyapunovTolerances& tol) {
  LyapunovReport report;
  const auto& states = trajectory.states;
  report.samples.reserve(states.size());
  for (const auto& s : states) {
    report.samples.push_back({s.t(), lyapunov_value(s.rho()), lyapunov_bound(s.rho(), model, dx), 0.0});
  }
  auto& samples = report.samples;
  for (std::size_t k = 0; k + 1 < samples.size(); ++k) {
    const double dt = samples[k + 1].t - samples[k].t;
    const double dv = samples[k + 1].value - samples[k].value;
    samples[k].rate = dt > 0.0 ? dv / dt : 0.0;
    report.max_increase = std::max(report.max_increase, dv);
    const double mean_bound = 0.5 * (samples[k].bound + samples[k + 1].bound);
    report.max_bound_excess = std::max(report.max_bound_excess, samples[k].rate - mean_bound);
  }
  if (samples.size() >= 2) {
    samples.back().rate = samples[samples.size() - 2].rate;
  }
  report.monotone = report.max_increase <= tol.monotone_slack;
  report.bound_respected = report.max_bound_excess <= tol.bound_slack;
  return report;
}

}  // namespace trm
