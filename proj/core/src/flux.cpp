#include "trm/flux.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

#include "trm/errors.hpp"

namespace trm {

double density_slack(double rho_max) noexcept {
  return kDensityTolerance * std::max(1.0, rho_max);
}

void check_density(double rho, double rho_max, const char* what) {
  const double slack = density_slack(rho_max);
  if (!(rho >= -slack && rho <= rho_max + slack)) {
    throw DomainError(std::string(what) + " " + std::to_string(rho) +
                      " outside [0, " + std::to_string(rho_max) + "]");
  }
}

double admit_density(double rho, double rho_max, const char* what) {
  check_density(rho, rho_max, what);
  return std::clamp(rho, 0.0, rho_max);
}

FluxModel::FluxModel(double omega, double rho_max)
    : omega_(omega), rho_max_(rho_max), f_max_(0.25 * omega * rho_max * rho_max) {
  if (!(omega > 0.0) || !std::isfinite(omega)) {
    throw std::invalid_argument("omega must be positive and finite");
  }
  if (!(rho_max > 0.0) || !std::isfinite(rho_max)) {
    throw std::invalid_argument("rho_max must be positive and finite");
  }
}

FluxModel FluxModel::from_max_speed(double v_max, double rho_max) {
  if (!(rho_max > 0.0)) {
    throw std::invalid_argument("rho_max must be positive");
  }
  return FluxModel(v_max / rho_max, rho_max);
}

double flux_value(const FluxModel& model, double rho) {
  check_density(rho, model.rho_max());
  return model(rho);
}

FactorizedFlux::FactorizedFlux(Scalar f1, Scalar f2, double rho_max)
    : FactorizedFlux(std::move(f1), std::move(f2), rho_max, std::nullopt) {}

FactorizedFlux::FactorizedFlux(Scalar f1, Scalar f2, double rho_max,
                               std::optional<FluxModel> model)
    : f1_(std::move(f1)),
      f2_(std::move(f2)),
      rho_max_(rho_max),
      model_(std::move(model)) {
  if (!f1_ || !f2_) {
    throw std::invalid_argument("f1 and f2 must be callable");
  }
  if (!(rho_max_ > 0.0) || !std::isfinite(rho_max_)) {
    throw std::invalid_argument("rho_max must be positive and finite");
  }
  if (f1_(0.0) != 0.0) {
    throw MonotonicityError("f1(0) must be exactly 0");
  }
  if (f2_(rho_max_) != 0.0) {
    throw MonotonicityError("f2(rho_max) must be exactly 0");
  }

  const double h = rho_max_ / kValidationSamples;
  double prev1 = f1_(0.0);
  double prev2 = f2_(0.0);
  sup_f2_ = prev2;
  for (int k = 1; k <= kValidationSamples; ++k) {
    const double rho = k == kValidationSamples ? rho_max_ : k * h;
    const double v1 = f1_(rho);
    const double v2 = f2_(rho);
    if (!std::isfinite(v1) || !std::isfinite(v2)) {
      throw MonotonicityError("f1/f2 not finite at rho = " + std::to_string(rho));
    }
    const double slack1 = 1e-12 * std::max({1.0, std::abs(v1), std::abs(prev1)});
    const double slack2 = 1e-12 * std::max({1.0, std::abs(v2), std::abs(prev2)});
    if (v1 < prev1 - slack1) {
      throw MonotonicityError("f1 decreases near rho = " + std::to_string(rho));
    }
    if (v2 > prev2 + slack2) {
      throw MonotonicityError("f2 increases near rho = " + std::to_string(rho));
    }
    sup_df1_ = std::max(sup_df1_, (v1 - prev1) / h);
    sup_df2_ = std::max(sup_df2_, (prev2 - v2) / h);
    sup_f1_ = std::max(sup_f1_, v1);
    sup_f2_ = std::max(sup_f2_, v2);
    prev1 = v1;
    prev2 = v2;
  }

  if (model_) {
    // Exact suprema: f1' = 1, f1 <= rho_max, f2 <= omega rho_max, |f2'| = omega.
    sup_df1_ = 1.0;
    sup_f1_ = rho_max_;
    sup_f2_ = model_->omega() * rho_max_;
    sup_df2_ = model_->omega();
  }
}

FactorizedFlux FactorizedFlux::quadratic(const FluxModel& model) {
  const double omega = model.omega();
  const double rho_max = model.rho_max();
  return FactorizedFlux([](double rho) { return rho; },
                        [omega, rho_max](double rho) { return omega * (rho_max - rho); },
                        rho_max, model);
}

}  // namespace trm
