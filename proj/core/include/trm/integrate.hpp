#pragma once

#include <cstddef>
#include <vector>

#include "trm/grid.hpp"
#include "trm/schemes.hpp"

namespace trm {

/// Explicit-step guard. For a monotone flux the Euler update is monotone
/// (and therefore bound preserving and TVD) when
///   dt <= dx / (sup|F_u| + sup|F_v|),
/// and ramp sinks/sources tighten this by their largest per-cell rate.
struct CflPolicy {
  double courant = 0.9;

  /// Largest dt the scheme tolerates at time t, before the courant factor.
  static double stability_bound(const RhsContext& ctx, double t);

  double dt_max(const RhsContext& ctx, double t) const;
};

/// One forward Euler step of the semi-discrete system. Throws CflViolation
/// when dt exceeds CflPolicy::dt_max.
DensityState step_euler(const DensityState& state, double dt, const RhsContext& ctx,
                        const CflPolicy& cfl = {});

/// Sampled states of one run, in time order.
struct Trajectory {
  std::vector<DensityState> states;

  std::size_t size() const noexcept { return states.size(); }
  bool empty() const noexcept { return states.empty(); }
  const DensityState& front() const { return states.front(); }
  const DensityState& back() const { return states.back(); }
  std::vector<double> times() const;
};

/// Euler stepping to t_end with dt = courant * bound (last step shortened),
/// keeping every `stride`-th state plus the final one.
Trajectory integrate_euler(const DensityState& initial, double t_end, const RhsContext& ctx,
                           const CflPolicy& cfl = {}, std::size_t stride = 1);

struct ReferenceOptions {
  /// dt = step_fraction * dx / (sup|F_u| + sup|F_v|).
  double step_fraction = 0.1;
  /// Keep every stride-th step (the final state is always kept).
  std::size_t stride = 1;
  /// Max-norm disagreement allowed between the dt and dt/2 runs at t_end,
  /// relative to max(1, rho_max).
  double tolerance = 1e-6;
  bool verify_halving = true;
};

/// Fixed-step classical fourth-order Runge-Kutta. After each step densities
/// that overshoot [0, rho_max] by at most 1e-10 * max(1, rho_max) are
/// clamped; larger overshoots throw ToleranceFailure.
Trajectory integrate_reference(const DensityState& initial, double t_end,
                               const RhsContext& ctx, const ReferenceOptions& options = {});

/// Fixed step used by integrate_reference before it is fitted to t_end.
double reference_step(const RhsContext& ctx, double step_fraction = 0.1);

}  // namespace trm
