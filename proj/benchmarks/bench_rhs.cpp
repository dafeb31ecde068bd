#include <benchmark/benchmark.h>

#include <random>

#include "trm/schemes.hpp"

namespace {

std::vector<double> random_state(std::size_t n) {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> d(0.0, 100.0);
  std::vector<double> rho(n);
  for (auto& v : rho) v = d(rng);
  return rho;
}

void run(benchmark::State& state, trm::NumericalFlux flux) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const trm::RhsContext ctx(trm::Grid(20.0, n), trm::boundary::CopyOut{}, std::move(flux));
  const auto rho = random_state(n);
  std::vector<double> out(n);
  for (auto _ : state) {
    trm::rhs_into(ctx, rho, 0.0, out);
    benchmark::DoNotOptimize(out.data());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

const trm::FluxModel kModel(1.0, 100.0);

void BM_RhsTrm(benchmark::State& s) { run(s, trm::NumericalFlux::trm(kModel)); }
void BM_RhsLxf(benchmark::State& s) { run(s, trm::NumericalFlux::lax_friedrichs(kModel)); }
void BM_RhsGodunov(benchmark::State& s) { run(s, trm::NumericalFlux::godunov(kModel)); }
void BM_RhsTrmGeneric(benchmark::State& s) {
  run(s, trm::NumericalFlux::trm(trm::FactorizedFlux([](double r) { return r * r; },
                                                     [](double r) { return 100.0 - r; }, 100.0)));
}

}  // namespace

BENCHMARK(BM_RhsTrm)->Arg(100)->Arg(10000);
BENCHMARK(BM_RhsLxf)->Arg(100)->Arg(10000);
BENCHMARK(BM_RhsGodunov)->Arg(100)->Arg(10000);
BENCHMARK(BM_RhsTrmGeneric)->Arg(100)->Arg(10000);

BENCHMARK_MAIN();
