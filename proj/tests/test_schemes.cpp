#include <doctest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "trm/errors.hpp"
#include "trm/schemes.hpp"

using namespace trm;

namespace {

const FluxModel kModel(1.0, 100.0);

std::vector<NumericalFlux> all_fluxes() {
  return {
      NumericalFlux::trm(kModel),
      NumericalFlux::lax_friedrichs(kModel),
      NumericalFlux::godunov(kModel),
      NumericalFlux::trm(FactorizedFlux([](double r) { return r * r; },
                                        [](double r) { return 100.0 - r; }, 100.0)),
      NumericalFlux::trm(FactorizedFlux([](double r) { return std::sqrt(r); },
                                        [](double r) { return (100.0 - r) * (100.0 - r) / 100.0; }, 100.0)),
  };
}

}  // namespace

TEST_CASE("trm flux examples") {
  const auto fx = FactorizedFlux::quadratic(kModel);
  CHECK(flux_trm(fx, 0.0, 63.0) == 0.0);
  CHECK(flux_trm(fx, 40.0, 100.0) == 0.0);
  CHECK(flux_trm(fx, 50.0, 50.0) == 2500.0);
  CHECK(flux_trm(fx, 30.0, 20.0) == doctest::Approx(2400.0));
  CHECK_THROWS_AS(flux_trm(fx, -1.0, 20.0), DomainError);
}

TEST_CASE("lax-friedrichs flux examples") {
  CHECK(flux_lxf(kModel, 50.0, 30.0, 30.0) == doctest::Approx(2100.0));
  CHECK(flux_lxf(kModel, 50.0, 0.0, 100.0) == doctest::Approx(-5000.0));
  CHECK(flux_lxf(kModel, 50.0, 100.0, 0.0) == doctest::Approx(5000.0));
  CHECK(min_lxf_diffusion(kModel) == 50.0);
  CHECK_THROWS_AS(flux_lxf(kModel, 49.0, 1.0, 2.0), MonotonicityError);
  CHECK_THROWS_AS(NumericalFlux::lax_friedrichs(kModel, 10.0), MonotonicityError);
}

TEST_CASE("godunov flux examples") {
  CHECK(flux_godunov(kModel, 20.0, 80.0) == doctest::Approx(1600.0));
  CHECK(flux_godunov(kModel, 80.0, 20.0) == doctest::Approx(2500.0));
  CHECK(flux_godunov(kModel, 50.0, 50.0) == doctest::Approx(2500.0));
  CHECK(oracle::brute_godunov(1.0, 100.0, 20.0, 80.0, 1000000) == doctest::Approx(1600.0));
  CHECK(oracle::brute_godunov(1.0, 100.0, 80.0, 20.0, 1000000) == doctest::Approx(2500.0));
}

TEST_CASE("godunov closed form matches the brute-force extremum") {
  for (int a = 0; a < 50; ++a) {
    for (int b = 0; b < 50; ++b) {
      const double u = 100.0 * a / 49.0, v = 100.0 * b / 49.0;
      CHECK(std::abs(flux_godunov(kModel, u, v) - oracle::brute_godunov(1.0, 100.0, u, v)) <=
            1e-6 * kModel.f_max());
    }
  }
}

TEST_CASE("every flux is consistent") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> d(0.0, 100.0);
  for (const auto& F : all_fluxes()) {
    CAPTURE(F.name());
    for (int k = 0; k < 1000; ++k) {
      const double u = d(rng);
      CHECK(std::abs(F(u, u) - F.physical(u)) <= 1e-12 * std::max(1.0, F.physical(u)));
    }
  }
}

TEST_CASE("every flux is monotone on a sampled grid") {
  const double h = 1e-6;
  for (const auto& F : all_fluxes()) {
    CAPTURE(F.name());
    bool ok = true;
    for (int a = 0; a < 100; ++a) {
      for (int b = 0; b < 100; ++b) {
        const double u = (100.0 - h) * a / 99.0, v = (100.0 - h) * b / 99.0;
        const double base = F(u, v);
        const double slack = 1e-9 * std::max(1.0, std::abs(base));
        if (F(u + h, v) < base - slack || F(u, v + h) > base + slack) ok = false;
      }
    }
    CHECK(ok);
  }
}

TEST_CASE("rhs keeps empty cells nonnegative and full cells nonpositive") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> d(0.0, 100.0);
  const Grid g(3.0, 3);
  for (const auto& F : all_fluxes()) {
    CAPTURE(F.name());
    for (int k = 0; k < 500; ++k) {
      const double l = d(rng), r = d(rng);
      const RhsContext fixed(g, boundary::Fixed{l, r}, F);
      const std::vector<double> empty{d(rng), 0.0, d(rng)};
      CHECK(rhs(fixed, empty, 0.0)[1] >= -1e-12);
      const std::vector<double> full{d(rng), 100.0, d(rng)};
      CHECK(rhs(fixed, full, 0.0)[1] <= 1e-12);
    }
  }
}

TEST_CASE("range sums of rhs telescope to the boundary fluxes") {
  std::mt19937_64 rng(3);
  const std::size_t n = 12;
  const Grid g(6.0, n);
  for (const auto& F : all_fluxes()) {
    CAPTURE(F.name());
    const RhsContext ctx(g, boundary::CopyOut{}, F);
    for (int k = 0; k < 50; ++k) {
      const auto rho = oracle::random_state(rng, n, 0.0, 100.0);
      const auto r = rhs(ctx, rho, 0.0);
      for (std::size_t lo = 1; lo + 1 < n; ++lo) {
        for (std::size_t hi = lo; hi + 1 < n; ++hi) {
          double sum = 0.0;
          for (std::size_t i = lo; i <= hi; ++i) sum += r[i];
          const double expected = (F(rho[lo - 1], rho[lo]) - F(rho[hi], rho[hi + 1])) / g.dx();
          CHECK(sum == doctest::Approx(expected).epsilon(1e-12).scale(1e4));
        }
      }
    }
    const RhsContext ring(g, boundary::Ring{}, F);
    const auto rho = oracle::random_state(rng, n, 0.0, 100.0);
    double total = 0.0;
    for (double v : rhs(ring, rho, 0.0)) total += v;
    CHECK(std::abs(total) <= 1e-12 * 1e4);
  }
}

TEST_CASE("rhs examples") {
  SUBCASE("uniform state has zero rate for every boundary") {
    const Grid g(5.0, 5);
    const std::vector<double> rho(5, 37.0);
    for (const auto& F : all_fluxes()) {
      for (BoundaryPolicy bc : {BoundaryPolicy{boundary::CopyOut{}}, BoundaryPolicy{boundary::Ring{}},
                                BoundaryPolicy{boundary::Fixed{37.0, 37.0}}}) {
        for (double v : rhs(RhsContext(g, bc, F), rho, 0.0)) CHECK(std::abs(v) <= 1e-10);
      }
    }
  }
  SUBCASE("ring of three cells") {
    const Grid g(3.0, 3);
    const RhsContext ctx(g, boundary::Ring{}, NumericalFlux::trm(kModel));
    const auto r = rhs(ctx, std::vector<double>{0.0, 100.0, 0.0}, 0.0);
    CHECK(r[0] == 0.0);
    CHECK(r[1] == -10000.0);
    CHECK(r[2] == 10000.0);
    const auto oracle_r = oracle::trm_rhs({0.0, 100.0, 0.0}, 1.0, 100.0, 1.0, true);
    for (int i = 0; i < 3; ++i) CHECK(r[i] == oracle_r[i]);
  }
  SUBCASE("on-ramp inflow is gated at jam density") {
    const Grid g(1.0, 1);
    const RampConfig ramps({1.0}, {0.0}, StepSignal(2.0), StepSignal(0.0));
    // empty upstream and jammed downstream ghosts: no transport through either face
    const RhsContext ctx(g, boundary::Fixed{0.0, 100.0}, NumericalFlux::trm(kModel), ramps);
    CHECK(rhs(ctx, std::vector<double>{100.0}, 0.0)[0] == 0.0);
    CHECK(rhs(ctx, std::vector<double>{40.0}, 0.0)[0] == doctest::Approx(2.0 * 60.0));
  }
  SUBCASE("ramp terms follow the signal in time") {
    const Grid g(2.0, 2);
    const RampConfig ramps({0.5, 0.0}, {0.0, 1.0}, StepSignal(0.0, {{1.0, 4.0}}), StepSignal(3.0));
    const RhsContext ctx(g, boundary::Ring{}, NumericalFlux::trm(kModel), ramps);
    const std::vector<double> rho(2, 20.0);
    const auto before = rhs(ctx, rho, 0.5);
    const auto after = rhs(ctx, rho, 1.0);
    CHECK(before[0] == 0.0);
    CHECK(before[1] == doctest::Approx(-60.0));
    CHECK(after[0] == doctest::Approx(0.5 * 4.0 * 80.0));
  }
}

TEST_CASE("rhs validates its inputs") {
  const Grid g(3.0, 3);
  const RhsContext ctx(g, boundary::CopyOut{}, NumericalFlux::godunov(kModel));
  CHECK_THROWS_AS(rhs(ctx, std::vector<double>{1.0, 2.0}, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(rhs(ctx, std::vector<double>{1.0, 2.0, 101.0}, 0.0), DomainError);
  CHECK_THROWS_AS(RhsContext(g, boundary::Fixed{0.0, 120.0}, NumericalFlux::godunov(kModel)), DomainError);
  const RampConfig wrong({1.0}, {0.0}, StepSignal(1.0), StepSignal(0.0));
  CHECK_THROWS_AS(RhsContext(g, boundary::CopyOut{}, NumericalFlux::trm(kModel), wrong), std::invalid_argument);
}

TEST_CASE("derivative bounds") {
  const auto b = NumericalFlux::trm(kModel).derivative_bounds();
  CHECK(b.du == doctest::Approx(100.0));
  CHECK(b.dv == doctest::Approx(100.0));
  const auto l = NumericalFlux::lax_friedrichs(kModel).derivative_bounds();
  CHECK(l.du == doctest::Approx(100.0));
  const auto gd = NumericalFlux::godunov(kModel).derivative_bounds();
  CHECK(gd.du == doctest::Approx(100.0));
  // numerical check of the trm bounds
  const auto F = NumericalFlux::trm(kModel);
  double du = 0.0, dv = 0.0;
  for (int a = 1; a < 100; ++a) {
    for (int c = 1; c < 100; ++c) {
      du = std::max(du, std::abs(oracle::derivative([&](double x) { return F(x, c); }, a)));
      dv = std::max(dv, std::abs(oracle::derivative([&](double x) { return F(a, x); }, c)));
    }
  }
  CHECK(du <= b.du + 1e-6);
  CHECK(dv <= b.dv + 1e-6);
}
