#pragma once

#include <optional>
#include <span>
#include <string_view>
#include <variant>
#include <vector>

#include "trm/flux.hpp"
#include "trm/grid.hpp"
#include "trm/ramps.hpp"

namespace trm {

/// F(u, v) = f1(u) * f2(v); for the quadratic model omega * u * (rho_max - v).
double flux_trm(const FactorizedFlux& fx, double u, double v);

/// F(u, v) = (f(u) + f(v)) / 2 + D (u - v). Throws MonotonicityError when
/// D < omega * rho_max / 2.
double flux_lxf(const FluxModel& model, double diffusion, double u, double v);

/// Exact Riemann flux of the concave quadratic f: min of f over [u, v]
/// when u <= v, max over [v, u] otherwise.
double flux_godunov(const FluxModel& model, double u, double v);

/// Smallest diffusion coefficient keeping the Lax-Friedrichs flux monotone.
double min_lxf_diffusion(const FluxModel& model) noexcept;

/// Upper bounds of |dF/du| and |dF/dv| over [0, rho_max]^2.
struct DerivativeBounds {
  double du;
  double dv;
};

class NumericalFlux {
 public:
  struct Trm {
    FactorizedFlux flux;
  };
  struct LaxFriedrichs {
    FluxModel model;
    double diffusion;
  };
  struct Godunov {
    FluxModel model;
  };
  using Variant = std::variant<Trm, LaxFriedrichs, Godunov>;

  static NumericalFlux trm(FactorizedFlux flux);
  static NumericalFlux trm(const FluxModel& model);
  /// Defaults to the minimal monotone diffusion omega * rho_max / 2.
  static NumericalFlux lax_friedrichs(const FluxModel& model,
                                      std::optional<double> diffusion = std::nullopt);
  static NumericalFlux godunov(const FluxModel& model);

  /// Domain-checked evaluation.
  double operator()(double u, double v) const;
  /// Same formula without range checks.
  double evaluate(double u, double v) const noexcept;
  /// Physical flux f(rho) the scheme is consistent with.
  double physical(double rho) const;

  double rho_max() const noexcept;
  std::string_view name() const noexcept;
  DerivativeBounds derivative_bounds() const noexcept;
  /// The quadratic model behind the flux, if there is one.
  std::optional<FluxModel> quadratic_model() const;

  const Variant& variant() const noexcept { return flux_; }

 private:
  explicit NumericalFlux(Variant flux) : flux_(std::move(flux)) {}

  Variant flux_;
};

/// Everything the semi-discrete right-hand side depends on besides the state.
struct RhsContext {
  RhsContext(Grid grid, BoundaryPolicy boundary, NumericalFlux flux,
             std::optional<RampConfig> ramps = std::nullopt);

  Grid grid;
  BoundaryPolicy boundary;
  NumericalFlux flux;
  std::optional<RampConfig> ramps;

  double rho_max() const noexcept { return flux.rho_max(); }
};

/// Densities handed to rhs_into may stray this far (times max(1, rho_max))
/// outside [0, rho_max]; Runge-Kutta stage values are not clamped.
inline constexpr double kStageSlack = 1e-9;

/// d rho_i / dt = (F(rho_{i-1}, rho_i) - F(rho_i, rho_{i+1})) / dx + ramp terms.
void rhs_into(const RhsContext& ctx, std::span<const double> rho, double t,
              std::span<double> out);

std::vector<double> rhs(const RhsContext& ctx, std::span<const double> rho, double t);

std::vector<double> rhs(const DensityState& state, const Grid& grid,
                        const BoundaryPolicy& boundary, const NumericalFlux& flux,
                        const RampConfig* ramps, double t);

}  // namespace trm
