#include <benchmark/benchmark.h>

#include "trm/exact.hpp"
#include "trm/integrate.hpp"

namespace {

const trm::FluxModel kModel(1.0, 100.0);

void BM_ReferenceRarefaction(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const trm::Grid grid(20.0, n);
  const trm::RhsContext ctx(grid, trm::boundary::CopyOut{}, trm::NumericalFlux::trm(kModel));
  const auto init = trm::cell_average_init(grid, trm::PiecewiseLinearProfile::step(20.0, 10.0, 100.0, 0.0), 100.0);
  trm::ReferenceOptions options;
  options.verify_halving = false;
  for (auto _ : state) {
    auto traj = trm::integrate_reference(init, 2.0 / 60.0, ctx, options);
    benchmark::DoNotOptimize(traj.back().values().data());
  }
}

void BM_EulerRing(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const trm::Grid grid(static_cast<double>(n), n);
  const trm::RhsContext ctx(grid, trm::boundary::Ring{}, trm::NumericalFlux::trm(kModel));
  std::vector<double> rho(n);
  for (std::size_t i = 0; i < n; ++i) rho[i] = 50.0 + 40.0 * ((i * 7919) % 13) / 13.0;
  const trm::DensityState init(0.0, rho, 100.0);
  for (auto _ : state) {
    auto traj = trm::integrate_euler(init, 0.5, ctx, {}, 1000000);
    benchmark::DoNotOptimize(traj.back().values().data());
  }
}

void BM_ExactAverages(benchmark::State& state) {
  const trm::Grid grid(20.0, static_cast<std::size_t>(state.range(0)));
  const trm::RiemannProblem problem(100.0, 0.0, 10.0, kModel);
  for (auto _ : state) {
    auto avg = trm::exact_cell_averages(problem, grid, 0.02);
    benchmark::DoNotOptimize(avg.data());
  }
}

}  // namespace

BENCHMARK(BM_ReferenceRarefaction)->Arg(100)->Arg(300)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_EulerRing)->Arg(50)->Arg(1000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ExactAverages)->Arg(300)->Arg(10000);

BENCHMARK_MAIN();
