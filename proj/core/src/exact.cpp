#include "trm/exact.hpp"

#include <algorithm>
#include <string>

#include "trm/errors.hpp"

namespace trm {

RiemannProblem::RiemannProblem(double left, double right, double position, FluxModel m)
    : rho_left(left), rho_right(right), x0(position), model(m) {
  check_density(rho_left, model.rho_max(), "left state");
  check_density(rho_right, model.rho_max(), "right state");
}

WaveKind RiemannProblem::kind() const noexcept {
  if (rho_left < rho_right) return WaveKind::Shock;
  if (rho_left > rho_right) return WaveKind::Rarefaction;
  return WaveKind::Constant;
}

double RiemannProblem::shock_speed() const noexcept {
  if (rho_left == rho_right) return model.derivative(rho_left);
  return (model(rho_right) - model(rho_left)) / (rho_right - rho_left);
}

std::pair<double, double> RiemannProblem::wave_extent(double t) const noexcept {
  if (kind() == WaveKind::Rarefaction) {
    return {x0 + model.derivative(rho_left) * t, x0 + model.derivative(rho_right) * t};
  }
  const double s = x0 + shock_speed() * t;
  return {s, s};
}

double exact_solution(const RiemannProblem& p, double x, double t) {
  if (t < 0.0) {
    throw DomainError("exact solution undefined for t < 0");
  }
  const auto [lo, hi] = p.wave_extent(t);
  if (p.kind() != WaveKind::Rarefaction || t == 0.0) {
    return x < lo ? p.rho_left : p.rho_right;
  }
  if (x < lo) return p.rho_left;
  if (x > hi) return p.rho_right;
  // Inverts f'(rho) = omega (rho_max - 2 rho) = (x - x0) / t.
  const double rho = 0.5 * (p.model.rho_max() - (x - p.x0) / (p.model.omega() * t));
  return std::clamp(rho, p.rho_right, p.rho_left);
}

std::vector<double> exact_cell_averages(const RiemannProblem& p, const Grid& grid, double t) {
  if (t < 0.0) {
    throw DomainError("exact solution undefined for t < 0");
  }
  const auto [lo, hi] = p.wave_extent(t);
  if (lo < 0.0 || hi > grid.length()) {
    throw DomainError("wave has left [0, L] at t = " + std::to_string(t));
  }
  const bool fan = p.kind() == WaveKind::Rarefaction && t > 0.0;

  std::vector<double> avg(grid.n_cells());
  for (std::size_t i = 0; i < avg.size(); ++i) {
    const double a = grid.left_edge(i);
    const double b = grid.right_edge(i);
    if (b <= lo) {
      avg[i] = p.rho_left;
      continue;
    }
    if (a >= hi) {
      avg[i] = p.rho_right;
      continue;
    }
    double integral = 0.0;
    integral += p.rho_left * std::max(0.0, std::min(b, lo) - a);
    integral += p.rho_right * std::max(0.0, b - std::max(a, hi));
    if (fan) {
      const double fa = std::max(a, lo);
      const double fb = std::min(b, hi);
      if (fb > fa) {
        const double mid = 0.5 * (fa + fb);
        integral += (fb - fa) * exact_solution(p, mid, t);
      }
    }
    avg[i] = integral / (b - a);
  }
  return avg;
}

}  // namespace trm
