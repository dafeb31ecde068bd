#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "trm/flux.hpp"
#include "trm/grid.hpp"
#include "trm/integrate.hpp"

namespace trm {

/// e(t) = dx * sum_i |rho_i - oracle_i|.
double spatial_error(std::span<const double> rho, std::span<const double> oracle, double dx);

/// Time norms of e(t) for one scheme and resolution.
struct ErrorReport {
  std::string scheme;
  std::size_t n_cells = 0;
  double l1 = 0.0;    ///< trapezoidal integral of e(t) over the sampled times
  double linf = 0.0;  ///< max of e(t) over the samples

  static std::string csv_header();
  /// "scheme,N,l1,linf" with six significant digits.
  std::string csv_row() const;
};

using OracleFn = std::function<std::vector<double>(double t)>;

ErrorReport error_norms(std::string scheme, const Trajectory& trajectory, const Grid& grid,
                        const OracleFn& oracle);

/// Same from precomputed samples e(t_k).
ErrorReport error_norms(std::string scheme, std::size_t n_cells, std::span<const double> times,
                        std::span<const double> errors);

/// sum |rho_{i+1} - rho_i|; the ring variant adds |rho_1 - rho_N|.
double total_variation(std::span<const double> rho, Topology topology = Topology::Line);

/// Average density, the uniform equilibrium of a ring.
double ring_equilibrium(std::span<const double> rho);

/// V(rho) = sum rho_i (log(rho_i / rho_bar) - 1) + N rho_bar. Requires rho_i > 0.
double lyapunov_value(std::span<const double> rho);

/// b(rho) = -(omega / (2 dx)) sum_i (rho_i - rho_{i+1})^2 on a ring.
double lyapunov_bound(std::span<const double> rho, const FluxModel& model, double dx);

/// dV/dt = sum log(rho_i / rho_bar) * rho_dot_i for the quadratic TRM ring.
double lyapunov_rate(std::span<const double> rho, const FluxModel& model, double dx);

struct LyapunovSample {
  double t;
  double value;
  double bound;
  /// Forward difference (V_{k+1} - V_k) / dt; backward at the last sample.
  double rate;
};

struct LyapunovTolerances {
  double monotone_slack = 1e-10;
  double bound_slack = 1e-8;
};

struct LyapunovReport {
  std::vector<LyapunovSample> samples;
  double max_increase = 0.0;      ///< largest V_{k+1} - V_k
  double max_bound_excess = 0.0;  ///< largest rate - mean(b_k, b_{k+1})
  bool monotone = true;
  bool bound_respected = true;

  bool passed() const noexcept { return monotone && bound_respected; }
};

/// Evaluates V and b along a ring trajectory and checks that V never
/// increases and that the finite-difference rate over each interval stays
/// below the interval-averaged analytic bound. Throws InteriorViolation if
/// any sampled density is <= 0.
LyapunovReport lyapunov_decay_check(const Trajectory& trajectory, const FluxModel& model,
                                    double dx, const LyapunovTolerances& tol = {});

}  // namespace trm
