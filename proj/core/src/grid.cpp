#include "trm/grid.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "trm/errors.hpp"
#include "trm/flux.hpp"

namespace trm {

Grid::Grid(double length, std::size_t n_cells) : length_(length), n_cells_(n_cells) {
  if (!(length > 0.0) || !std::isfinite(length)) {
    throw std::invalid_argument("grid length must be positive and finite");
  }
  if (n_cells == 0) {
    throw std::invalid_argument("grid needs at least one cell");
  }
  dx_ = length_ / static_cast<double>(n_cells_);
}

double Grid::left_edge(std::size_t i) const noexcept {
  return static_cast<double>(i) * dx_;
}

double Grid::right_edge(std::size_t i) const noexcept {
  return i + 1 == n_cells_ ? length_ : static_cast<double>(i + 1) * dx_;
}

std::string_view to_string(Topology topology) noexcept {
  return topology == Topology::Ring ? "ring" : "line";
}

namespace {
template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;
}  // namespace

Ghosts resolve_ghosts(const BoundaryPolicy& policy, std::span<const double> rho) {
  if (rho.empty()) {
    throw std::invalid_argument("cannot resolve ghosts of an empty state");
  }
  return std::visit(
      Overloaded{
          [&](const boundary::CopyOut&) { return Ghosts{rho.front(), rho.back()}; },
          [&](const boundary::Ring&) { return Ghosts{rho.back(), rho.front()}; },
          [&](const boundary::Fixed& f) { return Ghosts{f.left, f.right}; },
      },
      policy);
}

bool is_ring(const BoundaryPolicy& policy) noexcept {
  return std::holds_alternative<boundary::Ring>(policy);
}

Topology topology_of(const BoundaryPolicy& policy) noexcept {
  return is_ring(policy) ? Topology::Ring : Topology::Line;
}

std::string_view boundary_name(const BoundaryPolicy& policy) noexcept {
  switch (policy.index()) {
    case 0: return "copy-out";
    case 1: return "ring";
    default: return "fixed";
  }
}

void validate_boundary(const BoundaryPolicy& policy, double rho_max) {
  if (const auto* fixed = std::get_if<boundary::Fixed>(&policy)) {
    check_density(fixed->left, rho_max, "left ghost density");
    check_density(fixed->right, rho_max, "right ghost density");
  }
}

DensityState::DensityState(double t, std::vector<double> rho, double rho_max)
    : t_(t), rho_max_(rho_max), rho_(std::move(rho)) {
  if (!std::isfinite(t)) {
    throw std::invalid_argument("state time must be finite");
  }
  if (!(rho_max > 0.0)) {
    throw std::invalid_argument("rho_max must be positive");
  }
  for (double& value : rho_) {
    value = admit_density(value, rho_max_);
  }
}

double DensityState::mass(double dx) const noexcept {
  double sum = 0.0;
  for (double value : rho_) sum += value;
  return dx * sum;
}

PiecewiseLinearProfile::PiecewiseLinearProfile(std::vector<double> breaks,
                                               std::vector<double> start,
                                               std::vector<double> end)
    : breaks_(std::move(breaks)), start_(std::move(start)), end_(std::move(end)) {
  if (breaks_.size() < 2 || start_.size() + 1 != breaks_.size() ||
      end_.size() != start_.size()) {
    throw std::invalid_argument("profile needs k+1 breaks for k pieces");
  }
  if (breaks_.front() != 0.0) {
    throw std::invalid_argument("profile must start at x = 0");
  }
  for (std::size_t k = 0; k + 1 < breaks_.size(); ++k) {
    if (!(breaks_[k + 1] > breaks_[k])) {
      throw std::invalid_argument("profile breaks must be strictly increasing");
    }
  }
}

PiecewiseLinearProfile PiecewiseLinearProfile::constant(double length, double value) {
  return PiecewiseLinearProfile({0.0, length}, {value}, {value});
}

PiecewiseLinearProfile PiecewiseLinearProfile::step(double length, double x0, double left,
                                                    double right) {
  if (!(x0 > 0.0 && x0 < length)) {
    throw std::invalid_argument("step position must lie inside (0, length)");
  }
  return PiecewiseLinearProfile({0.0, x0, length}, {left, right}, {left, right});
}

PiecewiseLinearProfile PiecewiseLinearProfile::piecewise_constant(std::vector<double> breaks,
                                                                  std::vector<double> values) {
  std::vector<double> copy = values;
  return PiecewiseLinearProfile(std::move(breaks), std::move(values), std::move(copy));
}

double PiecewiseLinearProfile::operator()(double x) const {
  if (x < breaks_.front() || x > breaks_.back()) {
    throw DomainError("profile evaluated outside its support");
  }
  auto it = std::upper_bound(breaks_.begin(), breaks_.end(), x);
  std::size_t k = it == breaks_.begin() ? 0 : static_cast<std::size_t>(it - breaks_.begin()) - 1;
  k = std::min(k, start_.size() - 1);
  const double a = breaks_[k];
  const double b = breaks_[k + 1];
  return start_[k] + (end_[k] - start_[k]) * (x - a) / (b - a);
}

double PiecewiseLinearProfile::integral(double a, double b) const {
  a = std::max(a, breaks_.front());
  b = std::min(b, breaks_.back());
  double total = 0.0;
  for (std::size_t k = 0; k < start_.size(); ++k) {
    const double lo = std::max(a, breaks_[k]);
    const double hi = std::min(b, breaks_[k + 1]);
    if (hi <= lo) continue;
    const double width = breaks_[k + 1] - breaks_[k];
    const double slope = (end_[k] - start_[k]) / width;
    // Average of a linear function is its midpoint value.
    const double mid = 0.5 * (lo + hi);
    total += (hi - lo) * (start_[k] + slope * (mid - breaks_[k]));
  }
  return total;
}

double PiecewiseLinearProfile::min_value() const noexcept {
  return std::min(*std::min_element(start_.begin(), start_.end()),
                  *std::min_element(end_.begin(), end_.end()));
}

double PiecewiseLinearProfile::max_value() const noexcept {
  return std::max(*std::max_element(start_.begin(), start_.end()),
                  *std::max_element(end_.begin(), end_.end()));
}

DensityState cell_average_init(const Grid& grid, const PiecewiseLinearProfile& profile,
                               double rho_max) {
  check_density(profile.min_value(), rho_max, "initial profile value");
  check_density(profile.max_value(), rho_max, "initial profile value");
  if (std::abs(profile.length() - grid.length()) > 1e-12 * grid.length()) {
    throw std::invalid_argument("profile support does not match the grid length");
  }
  std::vector<double> rho(grid.n_cells());
  for (std::size_t i = 0; i < rho.size(); ++i) {
    const double a = grid.left_edge(i);
    const double b = grid.right_edge(i);
    rho[i] = profile.integral(a, b) / (b - a);
  }
  return DensityState(0.0, std::move(rho), rho_max);
}

DensityState cell_average_init(const Grid& grid, const std::function<double(double)>& profile,
                               double rho_max, double tolerance) {
  using Integrator = boost::math::quadrature::gauss_kronrod<double, 15>;
  auto checked = [&](double x) {
    const double value = profile(x);
    check_density(value, rho_max, "initial profile value");
    return value;
  };
  std::vector<double> rho(grid.n_cells());
  for (std::size_t i = 0; i < rho.size(); ++i) {
    const double a = grid.left_edge(i);
    const double b = grid.right_edge(i);
    rho[i] = Integrator::integrate(checked, a, b, 50, tolerance) / (b - a);
  }
  return DensityState(0.0, std::move(rho), rho_max);
}

}  // namespace trm
