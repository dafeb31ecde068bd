#include <doctest.h>

#include <cmath>
#include <random>

#include "trm/errors.hpp"
#include "trm/flux.hpp"
#include "trm/grid.hpp"
#include "trm/ramps.hpp"

using namespace trm;

TEST_CASE("flux_value at the ends and the critical density") {
  const FluxModel m(1.0, 100.0);
  CHECK(flux_value(m, 0.0) == 0.0);
  CHECK(flux_value(m, 100.0) == 0.0);
  CHECK(flux_value(m, 50.0) == 2500.0);
  CHECK(m.f_max() == 2500.0);
  CHECK(m.critical_density() == 50.0);
  CHECK(m.v_max() == 100.0);
}

TEST_CASE("flux_value rejects densities outside [0, rho_max]") {
  const FluxModel m(1.0, 100.0);
  CHECK_THROWS_AS(flux_value(m, -0.5), DomainError);
  CHECK_THROWS_AS(flux_value(m, 100.5), DomainError);
  CHECK_NOTHROW(flux_value(m, 100.0 + 1e-13));
}

TEST_CASE("model parameters are validated") {
  CHECK_THROWS_AS(FluxModel(0.0, 100.0), std::invalid_argument);
  CHECK_THROWS_AS(FluxModel(1.0, -1.0), std::invalid_argument);
  const auto m = FluxModel::from_max_speed(30.0, 120.0);
  CHECK(m.omega() == doctest::Approx(0.25));
}

TEST_CASE("flux maximum sits at rho_max/2 and the parabola is concave") {
  const FluxModel m(0.7, 80.0);
  double best = -1.0, arg = -1.0;
  for (int k = 0; k <= 8000; ++k) {
    const double r = 80.0 * k / 8000.0;
    if (flux_value(m, r) > best) {
      best = flux_value(m, r);
      arg = r;
    }
  }
  CHECK(arg == doctest::Approx(40.0));
  CHECK(best == doctest::Approx(m.f_max()).epsilon(1e-14));
  for (int k = 1; k < 100; ++k) {
    const double a = 0.8 * (k - 1), b = 0.8 * k, c = 0.8 * (k + 1);
    CHECK(flux_value(m, b) >= 0.5 * (flux_value(m, a) + flux_value(m, c)) - 1e-9);
  }
}

TEST_CASE("quadratic factorization reproduces the model pointwise") {
  const FluxModel m(1.3, 100.0);
  const auto fx = FactorizedFlux::quadratic(m);
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> d(0.0, 100.0);
  for (int k = 0; k < 1000; ++k) {
    const double r = d(rng);
    CHECK(fx(r) == doctest::Approx(m(r)).epsilon(1e-15));
  }
  CHECK(fx.sup_f1() == 100.0);
  CHECK(fx.sup_f2() == doctest::Approx(130.0));
  REQUIRE(fx.quadratic_model());
}

TEST_CASE("factorized flux validates f1(0), f2(rho_max) and monotonicity") {
  CHECK_NOTHROW(FactorizedFlux([](double r) { return r * r; }, [](double r) { return 100.0 - r; }, 100.0));
  CHECK_THROWS_AS(FactorizedFlux([](double r) { return r + 1.0; }, [](double r) { return 100.0 - r; }, 100.0),
                  MonotonicityError);
  CHECK_THROWS_AS(FactorizedFlux([](double r) { return r; }, [](double r) { return 101.0 - r; }, 100.0),
                  MonotonicityError);
  CHECK_THROWS_AS(FactorizedFlux([](double r) { return std::sin(r); }, [](double r) { return 100.0 - r; }, 100.0),
                  MonotonicityError);
  CHECK_THROWS_AS(FactorizedFlux([](double r) { return r; }, [](double r) { return (100.0 - r) * (r - 50.0) * (r - 50.0); }, 100.0),
                  MonotonicityError);
}

TEST_CASE("grid geometry") {
  const Grid g(20.0, 30);
  CHECK(g.dx() * 30 == doctest::Approx(20.0).epsilon(1e-15));
  CHECK(g.left_edge(0) == 0.0);
  CHECK(g.right_edge(29) == 20.0);
  CHECK(g.right_edge(4) == doctest::Approx(g.left_edge(5)));
  CHECK(g.center(0) == doctest::Approx(g.dx() / 2));
  CHECK_THROWS_AS(Grid(0.0, 10), std::invalid_argument);
  CHECK_THROWS_AS(Grid(1.0, 0), std::invalid_argument);
}

TEST_CASE("boundary ghosts") {
  const std::vector<double> rho{1.0, 2.0, 3.0};
  auto g = resolve_ghosts(boundary::CopyOut{}, rho);
  CHECK(g.left == 1.0);
  CHECK(g.right == 3.0);
  g = resolve_ghosts(boundary::Ring{}, rho);
  CHECK(g.left == 3.0);
  CHECK(g.right == 1.0);
  g = resolve_ghosts(boundary::Fixed{7.0, 9.0}, rho);
  CHECK(g.left == 7.0);
  CHECK(g.right == 9.0);
  CHECK(boundary_name(boundary::CopyOut{}) == "copy-out");
  CHECK(is_ring(boundary::Ring{}));
  CHECK(topology_of(boundary::Fixed{}) == Topology::Line);
  CHECK_THROWS_AS(validate_boundary(boundary::Fixed{-1.0, 0.0}, 100.0), DomainError);
}

TEST_CASE("density state is validated and clamped") {
  const DensityState s(0.0, {0.0, -1e-13, 100.0 + 1e-13, 50.0}, 100.0);
  CHECK(s[1] == 0.0);
  CHECK(s[2] == 100.0);
  CHECK(s.mass(0.5) == doctest::Approx(75.0));
  CHECK_THROWS_AS(DensityState(0.0, {-1e-6}, 100.0), DomainError);
  CHECK_THROWS_AS(DensityState(0.0, {100.1}, 100.0), DomainError);
}

TEST_CASE("cell averages of steps and constants") {
  SUBCASE("step aligned with a cell edge") {
    const Grid g(20.0, 10);
    const auto s = cell_average_init(g, PiecewiseLinearProfile::step(20.0, 10.0, 0.0, 100.0), 100.0);
    for (std::size_t i = 0; i < 5; ++i) CHECK(s[i] == 0.0);
    for (std::size_t i = 5; i < 10; ++i) CHECK(s[i] == 100.0);
  }
  SUBCASE("odd N splits the middle cell") {
    const Grid g(20.0, 11);
    const auto s = cell_average_init(g, PiecewiseLinearProfile::step(20.0, 10.0, 0.0, 100.0), 100.0);
    CHECK(s[5] == doctest::Approx(50.0));
    CHECK(s[4] == 0.0);
    CHECK(s[6] == 100.0);
  }
  SUBCASE("constant") {
    const Grid g(3.0, 7);
    const auto s = cell_average_init(g, PiecewiseLinearProfile::constant(3.0, 42.0), 100.0);
    for (double v : s.values()) CHECK(v == doctest::Approx(42.0));
  }
}

TEST_CASE("cell averages conserve mass for piecewise and smooth profiles") {
  const Grid g(20.0, 37);
  const auto pw = PiecewiseLinearProfile::piecewise_constant({0.0, 3.3, 11.1, 20.0}, {10.0, 80.0, 35.0});
  const auto s = cell_average_init(g, pw, 100.0);
  CHECK(s.mass(g.dx()) == doctest::Approx(pw.integral(0.0, 20.0)).epsilon(1e-12));
  CHECK(pw.integral(0.0, 20.0) == doctest::Approx(10.0 * 3.3 + 80.0 * 7.8 + 35.0 * 8.9));

  auto smooth = [](double x) { return 50.0 + 40.0 * std::sin(x); };
  const auto q = cell_average_init(g, smooth, 100.0);
  const double exact = 50.0 * 20.0 + 40.0 * (1.0 - std::cos(20.0));
  CHECK(std::abs(q.mass(g.dx()) - exact) < 1e-10);
  // cell 0 average of the sine profile
  const double c0 = (50.0 * g.dx() + 40.0 * (1.0 - std::cos(g.dx()))) / g.dx();
  CHECK(q[0] == doctest::Approx(c0).epsilon(1e-12));
}

TEST_CASE("quadrature initialisation rejects profiles leaving the admissible range") {
  const Grid g(1.0, 4);
  CHECK_THROWS_AS(cell_average_init(g, [](double x) { return 150.0 * x; }, 100.0), DomainError);
}

TEST_CASE("step signals are right continuous") {
  const StepSignal s(1.0, {{2.0, 3.0}, {5.0, 0.0}});
  CHECK(s(0.0) == 1.0);
  CHECK(s(1.999) == 1.0);
  CHECK(s(2.0) == 3.0);
  CHECK(s(4.9) == 3.0);
  CHECK(s(5.0) == 0.0);
  CHECK(s.max_value() == 3.0);
  CHECK_THROWS_AS(StepSignal(-1.0), DomainError);
  CHECK_THROWS_AS(StepSignal(1.0, {{2.0, 1.0}, {1.0, 1.0}}), std::invalid_argument);
}

TEST_CASE("ramp coverage weights are overlap fractions") {
  const Grid g(10.0, 5);  // dx = 2
  const std::vector<RampInterval> on{{1.0, 4.0}};
  const auto w = coverage_weights(g, on);
  CHECK(w[0] == doctest::Approx(0.5));
  CHECK(w[1] == doctest::Approx(1.0));
  CHECK(w[2] == 0.0);
  const std::vector<RampInterval> two{{0.0, 1.0}, {1.5, 2.0}};
  CHECK(coverage_weights(g, two)[0] == doctest::Approx(0.75));
  const std::vector<RampInterval> overlap{{0.0, 2.0}, {1.0, 3.0}};
  CHECK_THROWS_AS(coverage_weights(g, overlap), std::invalid_argument);

  const auto cfg = RampConfig::from_intervals(g, on, {}, StepSignal(2.0), StepSignal(0.0));
  CHECK(cfg.source(1, 100.0, 100.0, 0.0) == 0.0);
  CHECK(cfg.source(1, 40.0, 100.0, 0.0) == doctest::Approx(120.0));
  CHECK(cfg.max_rate(0.0) == doctest::Approx(2.0));
}
