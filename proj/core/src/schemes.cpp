#include "trm/schemes.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "trm/errors.hpp"

namespace trm {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

double godunov_unchecked(const FluxModel& model, double u, double v) noexcept {
  const double fu = model(u);
  const double fv = model(v);
  if (u <= v) return std::min(fu, fv);
  const double crit = model.critical_density();
  if (v <= crit && crit <= u) return model.f_max();
  return std::max(fu, fv);
}

double lxf_unchecked(const FluxModel& model, double diffusion, double u, double v) noexcept {
  return 0.5 * (model(u) + model(v)) + diffusion * (u - v);
}

void check_lxf_diffusion(const FluxModel& model, double diffusion) {
  if (!(diffusion >= min_lxf_diffusion(model))) {
    throw MonotonicityError("Lax-Friedrichs diffusion " + std::to_string(diffusion) +
                            " below omega*rho_max/2 = " +
                            std::to_string(min_lxf_diffusion(model)));
  }
}

}  // namespace

double flux_trm(const FactorizedFlux& fx, double u, double v) {
  check_density(u, fx.rho_max(), "u");
  check_density(v, fx.rho_max(), "v");
  return fx.f1(u) * fx.f2(v);
}

double flux_lxf(const FluxModel& model, double diffusion, double u, double v) {
  check_lxf_diffusion(model, diffusion);
  check_density(u, model.rho_max(), "u");
  check_density(v, model.rho_max(), "v");
  return lxf_unchecked(model, diffusion, u, v);
}

double flux_godunov(const FluxModel& model, double u, double v) {
  check_density(u, model.rho_max(), "u");
  check_density(v, model.rho_max(), "v");
  return godunov_unchecked(model, u, v);
}

double min_lxf_diffusion(const FluxModel& model) noexcept {
  return 0.5 * model.omega() * model.rho_max();
}

NumericalFlux NumericalFlux::trm(FactorizedFlux flux) { return NumericalFlux(Trm{std::move(flux)}); }

NumericalFlux NumericalFlux::trm(const FluxModel& model) {
  return trm(FactorizedFlux::quadratic(model));
}

NumericalFlux NumericalFlux::lax_friedrichs(const FluxModel& model,
                                            std::optional<double> diffusion) {
  const double d = diffusion.value_or(min_lxf_diffusion(model));
  check_lxf_diffusion(model, d);
  return NumericalFlux(LaxFriedrichs{model, d});
}

NumericalFlux NumericalFlux::godunov(const FluxModel& model) {
  return NumericalFlux(Godunov{model});
}

double NumericalFlux::operator()(double u, double v) const {
  check_density(u, rho_max(), "u");
  check_density(v, rho_max(), "v");
  return evaluate(u, v);
}

double NumericalFlux::evaluate(double u, double v) const noexcept {
  return std::visit(
      Overloaded{
          [&](const Trm& f) { return f.flux.f1(u) * f.flux.f2(v); },
          [&](const LaxFriedrichs& f) { return lxf_unchecked(f.model, f.diffusion, u, v); },
          [&](const Godunov& f) { return godunov_unchecked(f.model, u, v); },
      },
      flux_);
}

double NumericalFlux::physical(double rho) const {
  check_density(rho, rho_max());
  return std::visit(Overloaded{
                        [&](const Trm& f) { return f.flux(rho); },
                        [&](const LaxFriedrichs& f) { return f.model(rho); },
                        [&](const Godunov& f) { return f.model(rho); },
                    },
                    flux_);
}

double NumericalFlux::rho_max() const noexcept {
  return std::visit(Overloaded{
                        [](const Trm& f) { return f.flux.rho_max(); },
                        [](const LaxFriedrichs& f) { return f.model.rho_max(); },
                        [](const Godunov& f) { return f.model.rho_max(); },
                    },
                    flux_);
}

std::string_view NumericalFlux::name() const noexcept {
  switch (flux_.index()) {
    case 0: return "trm";
    case 1: return "lxf";
    default: return "godunov";
  }
}

DerivativeBounds NumericalFlux::derivative_bounds() const noexcept {
  return std::visit(
      Overloaded{
          [](const Trm& f) {
            return DerivativeBounds{f.flux.sup_f1_slope() * f.flux.sup_f2(),
                                    f.flux.sup_f1() * f.flux.sup_f2_slope()};
          },
          [](const LaxFriedrichs& f) {
            const double b = 0.5 * f.model.omega() * f.model.rho_max() + f.diffusion;
            return DerivativeBounds{b, b};
          },
          [](const Godunov& f) {
            const double b = f.model.omega() * f.model.rho_max();
            return DerivativeBounds{b, b};
          },
      },
      flux_);
}

std::optional<FluxModel> NumericalFlux::quadratic_model() const {
  return std::visit(Overloaded{
                        [](const Trm& f) { return f.flux.quadratic_model(); },
                        [](const LaxFriedrichs& f) { return std::optional<FluxModel>(f.model); },
                        [](const Godunov& f) { return std::optional<FluxModel>(f.model); },
                    },
                    flux_);
}

RhsContext::RhsContext(Grid grid_, BoundaryPolicy boundary_, NumericalFlux flux_,
                       std::optional<RampConfig> ramps_)
    : grid(std::move(grid_)),
      boundary(std::move(boundary_)),
      flux(std::move(flux_)),
      ramps(std::move(ramps_)) {
  validate_boundary(boundary, flux.rho_max());
  if (ramps && ramps->size() != grid.n_cells()) {
    throw std::invalid_argument("ramp weights do not match the number of cells");
  }
}

void rhs_into(const RhsContext& ctx, std::span<const double> rho, double t,
              std::span<double> out) {
  const std::size_t n = ctx.grid.n_cells();
  if (rho.size() != n || out.size() != n) {
    throw std::invalid_argument("state length does not match the grid");
  }
  const double rho_max = ctx.rho_max();
  const double slack = kStageSlack * std::max(1.0, rho_max);
  for (double value : rho) {
    if (!(value >= -slack && value <= rho_max + slack)) {
      throw DomainError("density " + std::to_string(value) + " outside [0, " +
                        std::to_string(rho_max) + "]");
    }
  }

  const Ghosts ghosts = resolve_ghosts(ctx.boundary, rho);
  const double inv_dx = 1.0 / ctx.grid.dx();
  const NumericalFlux& flux = ctx.flux;

  // Flux through the left face of cell i; reused as the right face of i-1.
  double left_face = flux.evaluate(ghosts.left, rho[0]);
  for (std::size_t i = 0; i < n; ++i) {
    const double right_neighbor = i + 1 < n ? rho[i + 1] : ghosts.right;
    const double right_face = flux.evaluate(rho[i], right_neighbor);
    out[i] = (left_face - right_face) * inv_dx;
    left_face = right_face;
  }

  if (ctx.ramps) {
    const double u_on = ctx.ramps->u_on(t);
    const double u_off = ctx.ramps->u_off(t);
    for (std::size_t i = 0; i < n; ++i) {
      out[i] += ctx.ramps->on_weight(i) * u_on * (rho_max - rho[i]) -
                ctx.ramps->off_weight(i) * u_off * rho[i];
    }
  }
}

std::vector<double> rhs(const RhsContext& ctx, std::span<const double> rho, double t) {
  std::vector<double> out(rho.size());
  rhs_into(ctx, rho, t, out);
  return out;
}

std::vector<double> rhs(const DensityState& state, const Grid& grid,
                        const BoundaryPolicy& boundary, const NumericalFlux& flux,
                        const RampConfig* ramps, double t) {
  RhsContext ctx(grid, boundary, flux,
                 ramps ? std::optional<RampConfig>(*ramps) : std::nullopt);
  return rhs(ctx, state.rho(), t);
}

}  // namespace trm
