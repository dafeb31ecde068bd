#include "trm/integrate.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>
#include <string>

#include "trm/errors.hpp"

namespace trm {

namespace {

constexpr double kClampWindow = 1e-10;

std::size_t step_count(double span, double dt) {
  const double steps = std::ceil(span / dt - 1e-9);
  return std::max<std::size_t>(1, static_cast<std::size_t>(steps));
}

void clamp_step(std::vector<double>& rho, double rho_max, double t) {
  const double window = kClampWindow * std::max(1.0, rho_max);
  for (double& value : rho) {
    if (!(value >= -window && value <= rho_max + window)) {
      throw ToleranceFailure("density " + std::to_string(value) + " left [0, " +
                             std::to_string(rho_max) + "] at t = " + std::to_string(t));
    }
    value = std::clamp(value, 0.0, rho_max);
  }
}

class Rk4 {
 public:
  explicit Rk4(const RhsContext& ctx)
      : ctx_(ctx), n_(ctx.grid.n_cells()), k1_(n_), k2_(n_), k3_(n_), k4_(n_), stage_(n_) {}

  void step(std::vector<double>& rho, double t, double dt) {
    rhs_into(ctx_, rho, t, k1_);
    for (std::size_t i = 0; i < n_; ++i) stage_[i] = rho[i] + 0.5 * dt * k1_[i];
    rhs_into(ctx_, stage_, t + 0.5 * dt, k2_);
    for (std::size_t i = 0; i < n_; ++i) stage_[i] = rho[i] + 0.5 * dt * k2_[i];
    rhs_into(ctx_, stage_, t + 0.5 * dt, k3_);
    for (std::size_t i = 0; i < n_; ++i) stage_[i] = rho[i] + dt * k3_[i];
    rhs_into(ctx_, stage_, t + dt, k4_);
    for (std::size_t i = 0; i < n_; ++i) {
      rho[i] += dt / 6.0 * (k1_[i] + 2.0 * k2_[i] + 2.0 * k3_[i] + k4_[i]);
    }
  }

 private:
  const RhsContext& ctx_;
  std::size_t n_;
  std::vector<double> k1_, k2_, k3_, k4_, stage_;
};

Trajectory run_rk4(const DensityState& initial, double t_end, const RhsContext& ctx,
                   std::size_t steps, std::size_t stride) {
  const double t0 = initial.t();
  const double dt = (t_end - t0) / static_cast<double>(steps);
  const double rho_max = ctx.rho_max();
  Trajectory out;
  out.states.reserve(steps / stride + 2);
  out.states.push_back(initial);

  Rk4 rk(ctx);
  std::vector<double> rho = initial.values();
  for (std::size_t k = 1; k <= steps; ++k) {
    const double t = t0 + static_cast<double>(k - 1) * dt;
    rk.step(rho, t, dt);
    const double t_next = k == steps ? t_end : t0 + static_cast<double>(k) * dt;
    clamp_step(rho, rho_max, t_next);
    if (k % stride == 0 || k == steps) {
      out.states.emplace_back(t_next, rho, rho_max);
    }
  }
  return out;
}

}  // namespace

double CflPolicy::stability_bound(const RhsContext& ctx, double t) {
  const DerivativeBounds b = ctx.flux.derivative_bounds();
  double rate = (b.du + b.dv) / ctx.grid.dx();
  if (ctx.ramps) rate += ctx.ramps->max_rate(t);
  return rate > 0.0 ? 1.0 / rate : std::numeric_limits<double>::infinity();
}

double CflPolicy::dt_max(const RhsContext& ctx, double t) const {
  if (!(courant > 0.0 && courant <= 1.0)) {
    throw std::invalid_argument("courant factor must lie in (0, 1]");
  }
  return courant * stability_bound(ctx, t);
}

DensityState step_euler(const DensityState& state, double dt, const RhsContext& ctx,
                        const CflPolicy& cfl) {
  if (!(dt > 0.0)) {
    throw std::invalid_argument("time step must be positive");
  }
  const double bound = cfl.dt_max(ctx, state.t());
  if (dt > bound * (1.0 + 1e-12)) {
    throw CflViolation(dt, bound);
  }
  std::vector<double> rho = rhs(ctx, state.rho(), state.t());
  for (std::size_t i = 0; i < rho.size(); ++i) {
    rho[i] = state[i] + dt * rho[i];
  }
  return DensityState(state.t() + dt, std::move(rho), ctx.rho_max());
}

std::vector<double> Trajectory::times() const {
  std::vector<double> t;
  t.reserve(states.size());
  for (const auto& s : states) t.push_back(s.t());
  return t;
}

Trajectory integrate_euler(const DensityState& initial, double t_end, const RhsContext& ctx,
                           const CflPolicy& cfl, std::size_t stride) {
  if (stride == 0) throw std::invalid_argument("stride must be positive");
  if (t_end < initial.t()) throw std::invalid_argument("t_end precedes the initial time");
  Trajectory out;
  out.states.push_back(initial);
  DensityState current = initial;
  std::size_t k = 0;
  while (current.t() < t_end) {
    double dt = cfl.dt_max(ctx, current.t());
    const bool last = current.t() + dt >= t_end * (1.0 - 1e-15);
    if (last) dt = t_end - current.t();
    if (!(dt > 0.0)) break;
    DensityState next = step_euler(current, dt, ctx, cfl);
    current = last ? DensityState(t_end, next.values(), ctx.rho_max()) : std::move(next);
    ++k;
    if (k % stride == 0 || last) out.states.push_back(current);
    if (last) break;
  }
  return out;
}

double reference_step(const RhsContext& ctx, double step_fraction) {
  if (!(step_fraction > 0.0 && step_fraction <= 1.0)) {
    throw std::invalid_argument("step fraction must lie in (0, 1]");
  }
  const DerivativeBounds b = ctx.flux.derivative_bounds();
  double rate = (b.du + b.dv) / ctx.grid.dx();
  if (ctx.ramps) {
    rate += ctx.ramps->on_signal().max_value() + ctx.ramps->off_signal().max_value();
  }
  return step_fraction / rate;
}

Trajectory integrate_reference(const DensityState& initial, double t_end,
                               const RhsContext& ctx, const ReferenceOptions& options) {
  if (!(t_end >= initial.t())) {
    throw std::invalid_argument("t_end precedes the initial time");
  }
  if (options.stride == 0) throw std::invalid_argument("stride must be positive");
  if (initial.size() != ctx.grid.n_cells()) {
    throw std::invalid_argument("state length does not match the grid");
  }
  if (t_end == initial.t()) {
    return Trajectory{{initial}};
  }
  const std::size_t steps = step_count(t_end - initial.t(), reference_step(ctx, options.step_fraction));
  Trajectory out = run_rk4(initial, t_end, ctx, steps, options.stride);

  if (options.verify_halving) {
    const Trajectory fine = run_rk4(initial, t_end, ctx, 2 * steps, 2 * steps);
    const auto& a = out.back().values();
    const auto& b = fine.back().values();
    double diff = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) diff = std::max(diff, std::abs(a[i] - b[i]));
    const double allowed = options.tolerance * std::max(1.0, ctx.rho_max());
    if (diff > allowed) {
      char msg[128];
      std::snprintf(msg, sizeof msg, "step-halving disagreement %.3g exceeds tolerance %.3g", diff,
                    allowed);
      throw ToleranceFailure(msg);
    }
  }
  return out;
}

}  // namespace trm
