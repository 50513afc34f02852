#include <benchmark/benchmark.h>

#include <cmath>

#include "qtherm/kernels.hpp"
#include "qtherm/models.hpp"

namespace {

using qtherm::kernels::Execution;

Execution mode(const benchmark::State& state) {
  return state.range(0) == 0 ? Execution::serial : Execution::parallel;
}

void BM_ZetaAccumulate(benchmark::State& state) {
  for (auto _ : state)
    benchmark::DoNotOptimize(qtherm::kernels::zeta_accumulate(3, 0.5, 48, 2, mode(state)));
}
BENCHMARK(BM_ZetaAccumulate)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_SampleBatch(benchmark::State& state) {
  const qtherm::CdfTable table(qtherm::GibbsPoint(qtherm::Model::complex, 1.0));
  for (auto _ : state)
    benchmark::DoNotOptimize(qtherm::kernels::sample_batch(table, 7, 100000, mode(state)));
}
BENCHMARK(BM_SampleBatch)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_PageEnergyBatch(benchmark::State& state) {
  for (auto _ : state)
    benchmark::DoNotOptimize(qtherm::kernels::page_energy_batch(2, 7, 100000, mode(state)));
}
BENCHMARK(BM_PageEnergyBatch)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_PolarizationGrid(benchmark::State& state) {
  std::vector<double> betas(400);
  for (std::size_t i = 0; i < betas.size(); ++i) betas[i] = std::pow(10.0, -2.0 + 5.0 * i / 399.0);
  const auto f = [](double b) { return qtherm::mean_polarization(qtherm::Model::kmb, b); };
  for (auto _ : state) benchmark::DoNotOptimize(qtherm::kernels::map_grid(f, betas, mode(state)));
}
BENCHMARK(BM_PolarizationGrid)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
