#include <doctest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "trm/analysis.hpp"
#include "trm/errors.hpp"
#include "trm/integrate.hpp"

using namespace trm;

namespace {

const FluxModel kModel(1.0, 100.0);

std::vector<NumericalFlux> fluxes() {
  return {NumericalFlux::trm(kModel), NumericalFlux::lax_friedrichs(kModel), NumericalFlux::godunov(kModel)};
}

double max_diff(std::span<const double> a, std::span<const double> b) {
  double d = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a[i] - b[i]));
  return d;
}

}  // namespace

TEST_CASE("cfl bound for the quadratic trm flux") {
  const RhsContext ctx(Grid(20.0, 100), boundary::CopyOut{}, NumericalFlux::trm(kModel));
  CHECK(CflPolicy::stability_bound(ctx, 0.0) == doctest::Approx(0.2 / 200.0));
  CHECK(CflPolicy{0.5}.dt_max(ctx, 0.0) == doctest::Approx(0.1 / 200.0));
  CHECK_THROWS_AS(CflPolicy{1.5}.dt_max(ctx, 0.0), std::invalid_argument);

  const RampConfig ramps(std::vector<double>(100, 1.0), std::vector<double>(100, 0.0), StepSignal(50.0),
                         StepSignal(0.0));
  const RhsContext with_ramps(Grid(20.0, 100), boundary::CopyOut{}, NumericalFlux::trm(kModel), ramps);
  CHECK(CflPolicy::stability_bound(with_ramps, 0.0) == doctest::Approx(1.0 / (200.0 / 0.2 + 50.0)));
}

TEST_CASE("euler step examples") {
  const Grid g(3.0, 3);
  const RhsContext ctx(g, boundary::Ring{}, NumericalFlux::trm(kModel));
  const auto next = step_euler(DensityState(0.0, {0.0, 100.0, 0.0}, 100.0), 1.0 / 400.0, ctx);
  CHECK(next[0] == 0.0);
  CHECK(next[1] == doctest::Approx(75.0));
  CHECK(next[2] == doctest::Approx(25.0));
  CHECK(next.t() == doctest::Approx(1.0 / 400.0));

  const auto uniform = step_euler(DensityState(0.0, {30.0, 30.0, 30.0}, 100.0), 1.0 / 400.0, ctx);
  for (double v : uniform.values()) CHECK(v == doctest::Approx(30.0));
}

TEST_CASE("euler step refuses steps above the cfl bound") {
  const Grid g(3.0, 3);
  const RhsContext ctx(g, boundary::Ring{}, NumericalFlux::trm(kModel));
  const DensityState s(0.0, {0.0, 100.0, 0.0}, 100.0);
  try {
    step_euler(s, 1.0 / 100.0, ctx);
    FAIL("expected a CFL violation");
  } catch (const CflViolation& e) {
    CHECK(e.bound() == doctest::Approx(0.9 / 200.0));
    CHECK(e.dt() == doctest::Approx(0.01));
  }
}

TEST_CASE("euler under cfl is total variation diminishing and bounded") {
  std::mt19937_64 rng(2024);
  for (const auto& F : fluxes()) {
    CAPTURE(F.name());
    const Grid g(20.0, 40);
    const RhsContext ctx(g, boundary::CopyOut{}, F);
    const double dt = CflPolicy{0.9}.dt_max(ctx, 0.0);
    bool tvd = true, bounded = true;
    for (int trial = 0; trial < 100; ++trial) {
      DensityState s(0.0, oracle::random_state(rng, g.n_cells(), 0.0, 100.0), 100.0);
      double tv = total_variation(s.rho());
      for (int k = 0; k < 100; ++k) {
        std::vector<double> raw = rhs(ctx, s.rho(), s.t());
        for (std::size_t i = 0; i < raw.size(); ++i) {
          const double v = s[i] + dt * raw[i];
          if (v < -1e-12 || v > 100.0 + 1e-12) bounded = false;
        }
        s = step_euler(s, dt, ctx);
        const double next = total_variation(s.rho());
        if (next > tv + 1e-9) tvd = false;
        tv = next;
      }
    }
    CHECK(tvd);
    CHECK(bounded);
  }
}

TEST_CASE("empty cells stay nonnegative after a step") {
  std::mt19937_64 rng(5);
  const Grid g(5.0, 5);
  for (const auto& F : fluxes()) {
    const RhsContext ctx(g, boundary::CopyOut{}, F);
    for (int k = 0; k < 200; ++k) {
      auto rho = oracle::random_state(rng, 5, 0.0, 100.0);
      rho[2] = 0.0;
      const auto next = step_euler(DensityState(0.0, rho, 100.0), CflPolicy{}.dt_max(ctx, 0.0), ctx);
      CHECK(next[2] >= 0.0);
    }
  }
}

TEST_CASE("ring mass is invariant under euler steps") {
  std::mt19937_64 rng(9);
  for (const auto& F : fluxes()) {
    const Grid g(10.0, 25);
    const RhsContext ctx(g, boundary::Ring{}, F);
    const DensityState init(0.0, oracle::random_state(rng, 25, 0.0, 100.0), 100.0);
    const auto traj = integrate_euler(init, 0.5, ctx);
    for (const auto& s : traj.states) CHECK(std::abs(s.mass(g.dx()) - init.mass(g.dx())) <= 1e-10 * 1e3);
    CHECK(traj.back().t() == 0.5);
  }
}

TEST_CASE("integrate_euler keeps every stride-th state and the last one") {
  const Grid g(1.0, 10);
  const RhsContext ctx(g, boundary::Ring{}, NumericalFlux::trm(kModel));
  const DensityState init(0.0, std::vector<double>(10, 20.0), 100.0);
  const auto all = integrate_euler(init, 0.01, ctx);
  const auto some = integrate_euler(init, 0.01, ctx, {}, 3);
  const std::size_t steps = all.size() - 1;
  CHECK(some.size() == 1 + steps / 3 + (steps % 3 ? 1 : 0));
  CHECK(some.back().t() == 0.01);
}

TEST_CASE("reference integrator") {
  const Grid g(20.0, 50);
  const RhsContext ring(g, boundary::Ring{}, NumericalFlux::trm(kModel));

  SUBCASE("zero span returns only the initial state") {
    const DensityState init(0.25, std::vector<double>(50, 10.0), 100.0);
    const auto traj = integrate_reference(init, 0.25, ring);
    CHECK(traj.size() == 1);
  }
  SUBCASE("uniform state stays constant") {
    const DensityState init(0.0, std::vector<double>(50, 64.0), 100.0);
    for (const auto& s : integrate_reference(init, 0.05, ring).states) {
      for (double v : s.values()) CHECK(v == doctest::Approx(64.0));
    }
  }
  SUBCASE("ring mass is conserved") {
    std::mt19937_64 rng(17);
    const DensityState init(0.0, oracle::random_state(rng, 50, 5.0, 95.0), 100.0);
    const auto traj = integrate_reference(init, 0.1, ring);
    CHECK(std::abs(traj.back().mass(g.dx()) - init.mass(g.dx())) <= 1e-9);
  }
  SUBCASE("step size is a tenth of the cfl scale") {
    CHECK(reference_step(ring) == doctest::Approx(0.1 * g.dx() / 200.0));
  }
  SUBCASE("dt and dt/2 agree on a smooth profile") {
    auto smooth = [](double x) { return 50.0 + 30.0 * std::sin(2.0 * M_PI * x / 20.0); };
    const DensityState init = cell_average_init(g, smooth, 100.0);
    ReferenceOptions coarse;
    coarse.verify_halving = false;
    ReferenceOptions fine = coarse;
    fine.step_fraction = 0.05;
    const auto a = integrate_reference(init, 0.05, ring, coarse);
    const auto b = integrate_reference(init, 0.05, ring, fine);
    CHECK(max_diff(a.back().rho(), b.back().rho()) <= 1e-8);
  }
  SUBCASE("a tiny tolerance trips the halving check") {
    std::mt19937_64 rng(4);
    const DensityState init(0.0, oracle::random_state(rng, 50, 0.0, 100.0), 100.0);
    ReferenceOptions strict;
    strict.step_fraction = 1.0;
    strict.tolerance = 1e-16;
    CHECK_THROWS_AS(integrate_reference(init, 0.05, ring, strict), ToleranceFailure);
  }
}
