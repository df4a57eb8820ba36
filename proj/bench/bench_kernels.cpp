// Serial references against the OpenMP kernels. Run with OMP_NUM_THREADS set
// to compare scaling; outputs are identical either way.
#include <benchmark/benchmark.h>

#include "stfields/simulate.hpp"
#include "stfields/suite.hpp"
#include "stfields/verify.hpp"

using namespace stfields;

namespace {

SimulationConfig sphere_config(std::size_t replicates) {
  Matrix A(2, 2);
  A << 0.5, 0.3, 0.3, 0.4;
  const TemporalCovariance B = separable_model({CorrelationFamily::Exponential, 1.0}, A);
  SimulationConfig cfg{make_example4(B, 2).coefficients(), {}, {0.0, 0.5, 1.0, 2.0}, replicates, 1};
  for (int k = 0; k < 16; ++k) cfg.sites.push_back(SpherePoint::on_s2(0.2 * k, 0.4 * k));
  return cfg;
}

void BM_SimulateSerial(benchmark::State& state) {
  const FieldSimulator sim(sphere_config(static_cast<std::size_t>(state.range(0))));
  for (auto _ : state) benchmark::DoNotOptimize(sim.simulate_replicates_serial(0, sim.config().replicates));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_SimulateParallel(benchmark::State& state) {
  const FieldSimulator sim(sphere_config(static_cast<std::size_t>(state.range(0))));
  for (auto _ : state) benchmark::DoNotOptimize(sim.simulate_replicates(0, sim.config().replicates));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_GramSerial(benchmark::State& state) {
  const SpaceTimeCovariance C = suite_example_model(ExampleModel::Example4);
  for (auto _ : state) benchmark::DoNotOptimize(gram_psd_check_serial(C, 10, 5, state.range(0), 1));
}

void BM_GramParallel(benchmark::State& state) {
  const SpaceTimeCovariance C = suite_example_model(ExampleModel::Example4);
  for (auto _ : state) benchmark::DoNotOptimize(gram_psd_check(C, 10, 5, state.range(0), 1));
}

}  // namespace

BENCHMARK(BM_SimulateSerial)->Arg(1000)->Arg(10000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SimulateParallel)->Arg(1000)->Arg(10000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_GramSerial)->Arg(50)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_GramParallel)->Arg(50)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
