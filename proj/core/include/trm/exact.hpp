#pragma once

#include <utility>
#include <vector>

#include "trm/flux.hpp"
#include "trm/grid.hpp"

namespace trm {

enum class WaveKind { Constant, Shock, Rarefaction };

/// Single-jump initial value problem for the quadratic flux:
/// rho_left for x < x0, rho_right for x >= x0.
struct RiemannProblem {
  RiemannProblem(double rho_left, double rho_right, double x0, FluxModel model);

  double rho_left;
  double rho_right;
  double x0;
  FluxModel model;

  /// Concave flux: increasing jump is a shock, decreasing one a fan.
  WaveKind kind() const noexcept;
  /// Rankine-Hugoniot speed (f(r) - f(l)) / (r - l); f'(rho) when equal.
  double shock_speed() const noexcept;
  /// [left edge, right edge] of the wave at time t (both equal for a shock).
  std::pair<double, double> wave_extent(double t) const noexcept;
};

/// Entropy solution. Throws DomainError for t < 0.
double exact_solution(const RiemannProblem& problem, double x, double t);

/// Exact cell averages of the entropy solution (analytic integration of
/// the piecewise constant/linear profile). Throws DomainError once the wave
/// has left [0, L].
std::vector<double> exact_cell_averages(const RiemannProblem& problem, const Grid& grid, double t);

}  // namespace trm
