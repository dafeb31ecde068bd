#include <benchmark/benchmark.h>

#include "trm/crn.hpp"

namespace {

void BM_MassActionRhs(benchmark::State& state) {
  const auto k = static_cast<std::size_t>(state.range(0));
  const auto net = trm::crn::build_network(k, trm::Topology::Ring, 0.5);
  std::vector<double> x(2 * k);
  for (std::size_t i = 0; i < k; ++i) {
    x[i] = 10.0 + static_cast<double>(i % 7);
    x[k + i] = 100.0 - x[i];
  }
  for (auto _ : state) {
    auto r = trm::crn::mass_action_rhs(net, x);
    benchmark::DoNotOptimize(r.data());
  }
}

void BM_ReducedField(benchmark::State& state) {
  const auto k = static_cast<std::size_t>(state.range(0));
  const auto net = trm::crn::build_network(k, trm::Topology::Ring, 0.5);
  const std::vector<double> caps(k, 100.0);
  const auto field = trm::crn::reduce_to_trm(net, caps);
  const std::vector<double> n(k, 30.0);
  for (auto _ : state) {
    auto r = field(n);
    benchmark::DoNotOptimize(r.data());
  }
}

void BM_BuildAndReduce(benchmark::State& state) {
  const auto k = static_cast<std::size_t>(state.range(0));
  const std::vector<double> caps(k, 100.0);
  for (auto _ : state) {
    const auto net = trm::crn::build_network(k, trm::Topology::Line, 1.0);
    auto field = trm::crn::reduce_to_trm(net, caps);
    benchmark::DoNotOptimize(&field);
  }
}

}  // namespace

BENCHMARK(BM_MassActionRhs)->Arg(10)->Arg(100);
BENCHMARK(BM_ReducedField)->Arg(10)->Arg(100);
BENCHMARK(BM_BuildAndReduce)->Arg(10)->Arg(100);

BENCHMARK_MAIN();
