#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <string_view>
#include <variant>
#include <vector>

namespace trm {

/// Uniform partition of [0, length] into n_cells cells. Cell i (zero based)
/// covers [i*dx, (i+1)*dx].
class Grid {
 public:
  Grid(double length, std::size_t n_cells);

  double length() const noexcept { return length_; }
  std::size_t n_cells() const noexcept { return n_cells_; }
  double dx() const noexcept { return dx_; }

  double left_edge(std::size_t i) const noexcept;
  double right_edge(std::size_t i) const noexcept;
  double center(std::size_t i) const noexcept { return (static_cast<double>(i) + 0.5) * dx_; }

 private:
  double length_;
  std::size_t n_cells_;
  double dx_;
};

enum class Topology { Line, Ring };

std::string_view to_string(Topology topology) noexcept;

namespace boundary {
/// Zero-gradient ghosts: rho_ghost_left = rho_1, rho_ghost_right = rho_N.
struct CopyOut {};
/// Periodic ghosts: rho_ghost_left = rho_N, rho_ghost_right = rho_1.
struct Ring {};
/// Constant ghost densities, e.g. a fixed inflow density upstream.
struct Fixed {
  double left = 0.0;
  double right = 0.0;
};
}  // namespace boundary

using BoundaryPolicy = std::variant<boundary::CopyOut, boundary::Ring, boundary::Fixed>;

struct Ghosts {
  double left;
  double right;
};

Ghosts resolve_ghosts(const BoundaryPolicy& policy, std::span<const double> rho);
bool is_ring(const BoundaryPolicy& policy) noexcept;
Topology topology_of(const BoundaryPolicy& policy) noexcept;
std::string_view boundary_name(const BoundaryPolicy& policy) noexcept;

/// Throws DomainError if a Fixed ghost is outside [0, rho_max].
void validate_boundary(const BoundaryPolicy& policy, double rho_max);

/// Cell densities at time t. Every value is validated against
/// [0, rho_max] (with round-off slack) and clamped at construction.
class DensityState {
 public:
  DensityState(double t, std::vector<double> rho, double rho_max);

  double t() const noexcept { return t_; }
  double rho_max() const noexcept { return rho_max_; }
  std::span<const double> rho() const noexcept { return rho_; }
  const std::vector<double>& values() const noexcept { return rho_; }
  std::size_t size() const noexcept { return rho_.size(); }
  double operator[](std::size_t i) const noexcept { return rho_[i]; }

  /// dx * sum(rho_i).
  double mass(double dx) const noexcept;

 private:
  double t_;
  double rho_max_;
  std::vector<double> rho_;
};

/// Continuous piecewise-linear-on-pieces initial profile on [0, length].
/// Piece k spans [breaks[k], breaks[k+1]] and varies linearly from
/// start[k] to end[k]; jumps are allowed between pieces. Values at a
/// break belong to the piece on the right.
class PiecewiseLinearProfile {
 public:
  PiecewiseLinearProfile(std::vector<double> breaks, std::vector<double> start,
                         std::vector<double> end);

  static PiecewiseLinearProfile constant(double length, double value);
  /// left on [0, x0), right on [x0, length].
  static PiecewiseLinearProfile step(double length, double x0, double left, double right);
  /// Piecewise-constant: values[k] on [breaks[k], breaks[k+1]).
  static PiecewiseLinearProfile piecewise_constant(std::vector<double> breaks,
                                                   std::vector<double> values);

  double operator()(double x) const;
  /// Exact integral over [a, b] (clipped to the profile's support).
  double integral(double a, double b) const;

  double length() const noexcept { return breaks_.back(); }
  double min_value() const noexcept;
  double max_value() const noexcept;

 private:
  std::vector<double> breaks_;
  std::vector<double> start_;
  std::vector<double> end_;
};

/// Exact cell averages of a piecewise-linear profile.
DensityState cell_average_init(const Grid& grid, const PiecewiseLinearProfile& profile,
                               double rho_max);

/// Cell averages of an arbitrary profile by adaptive Gauss-Kronrod
/// quadrature; every sampled value must lie in [0, rho_max].
DensityState cell_average_init(const Grid& grid, const std::function<double(double)>& profile,
                               double rho_max, double tolerance = 1e-12);

}  // namespace trm
