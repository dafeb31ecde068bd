#pragma once

#include <functional>
#include <optional>

namespace trm {

/// Absolute slack (scaled by max(1, rho_max)) tolerated when validating
/// densities; values inside the slack are clamped onto [0, rho_max].
inline constexpr double kDensityTolerance = 1e-12;

double density_slack(double rho_max) noexcept;

/// Throws DomainError unless rho lies in [0, rho_max] up to density_slack.
void check_density(double rho, double rho_max, const char* what = "density");

/// Clamps onto [0, rho_max] after check_density.
double admit_density(double rho, double rho_max, const char* what = "density");

/// Quadratic LWR fundamental diagram f(rho) = omega * rho * (rho_max - rho),
/// i.e. speed v(rho) = omega * (rho_max - rho) and omega = v_max / rho_max.
class FluxModel {
 public:
  FluxModel(double omega, double rho_max);

  static FluxModel from_max_speed(double v_max, double rho_max);

  double omega() const noexcept { return omega_; }
  double rho_max() const noexcept { return rho_max_; }
  double v_max() const noexcept { return omega_ * rho_max_; }
  double f_max() const noexcept { return f_max_; }
  double critical_density() const noexcept { return 0.5 * rho_max_; }

  double speed(double rho) const noexcept { return omega_ * (rho_max_ - rho); }

  // Unchecked; hot loops validate their inputs once up front.
  double operator()(double rho) const noexcept { return rho * speed(rho); }
  double derivative(double rho) const noexcept {
    return omega_ * (rho_max_ - 2.0 * rho);
  }

 private:
  double omega_;
  double rho_max_;
  double f_max_;
};

/// f(rho) with domain checking.
double flux_value(const FluxModel& model, double rho);

/// Flux written as f(rho) = f1(rho) * f2(rho) with f1 non-decreasing,
/// f1(0) = 0, f2 non-increasing and f2(rho_max) = 0.
///
/// The monotonicity assumptions are checked by sampling at construction.
/// The sampled suprema of f1, f2 and of their secant slopes are kept so
/// that time-step bounds can be derived for arbitrary factorizations.
class FactorizedFlux {
 public:
  using Scalar = std::function<double(double)>;

  static constexpr int kValidationSamples = 1000;

  FactorizedFlux(Scalar f1, Scalar f2, double rho_max);

  /// f1(rho) = rho, f2(rho) = omega * (rho_max - rho).
  static FactorizedFlux quadratic(const FluxModel& model);

  double f1(double rho) const { return f1_(rho); }
  double f2(double rho) const { return f2_(rho); }
  double operator()(double rho) const { return f1_(rho) * f2_(rho); }
  double rho_max() const noexcept { return rho_max_; }

  double sup_f1() const noexcept { return sup_f1_; }
  double sup_f2() const noexcept { return sup_f2_; }
  double sup_f1_slope() const noexcept { return sup_df1_; }
  double sup_f2_slope() const noexcept { return sup_df2_; }

  /// Set when this factorization was built by quadratic().
  const std::optional<FluxModel>& quadratic_model() const noexcept {
    return model_;
  }

 private:
  FactorizedFlux(Scalar f1, Scalar f2, double rho_max,
                 std::optional<FluxModel> model);

  Scalar f1_;
  Scalar f2_;
  double rho_max_;
  double sup_f1_ = 0.0;
  double sup_f2_ = 0.0;
  double sup_df1_ = 0.0;
  double sup_df2_ = 0.0;
  std::optional<FluxModel> model_;
};

}  // namespace trm
