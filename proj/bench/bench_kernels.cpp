// Serial reference kernels against the vectorised pair sums, and serial
// against OpenMP execution of grid scans and replications.

#include <benchmark/benchmark.h>

#include "icv/crossval.hpp"
#include "icv/gaussmix.hpp"
#include "icv/localicv.hpp"
#include "icv/reference.hpp"
#include "icv/simharness.hpp"

using namespace icv;

namespace {

std::vector<double> data(std::size_t n) { return target_density("bimodal").sample(n, 1); }

const SelectionKernel kKernel(6.0, 6.0);

void BM_LscvReference(benchmark::State& state) {
  const auto x = data(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(reference::lscv(x, kKernel, 0.3));
  state.SetComplexityN(state.range(0));
}

void BM_LscvFast(benchmark::State& state) {
  const Sample s(data(static_cast<std::size_t>(state.range(0))));
  for (auto _ : state) benchmark::DoNotOptimize(lscv(s, kKernel, 0.3));
  state.SetComplexityN(state.range(0));
}

void BM_IseReference(benchmark::State& state) {
  const auto x = data(static_cast<std::size_t>(state.range(0)));
  const auto f = target_density("bimodal");
  for (auto _ : state) benchmark::DoNotOptimize(reference::ise(x, f, 0.3));
}

void BM_IseFast(benchmark::State& state) {
  const Sample s(data(static_cast<std::size_t>(state.range(0))));
  const auto f = target_density("bimodal");
  for (auto _ : state) benchmark::DoNotOptimize(integrated_squared_error(s, f, 0.3));
}

void BM_LocalReference(benchmark::State& state) {
  const auto x = data(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(reference::local_icv(x, 0.5, 0.2, 1.0, kKernel));
}

void BM_LocalFast(benchmark::State& state) {
  const Sample s(data(static_cast<std::size_t>(state.range(0))));
  for (auto _ : state) benchmark::DoNotOptimize(local_icv_criterion(s, 0.5, 0.2, 1.0, kKernel));
}

void BM_SelectIcv(benchmark::State& state) {
  const Sample s(data(500));
  SearchOptions opts;
  opts.parallel = state.range(0) != 0;
  for (auto _ : state) benchmark::DoNotOptimize(select_icv(s, kKernel, opts).bandwidth);
}

void BM_LocalProfile(benchmark::State& state) {
  const Sample s(data(200));
  SearchOptions opts;
  opts.parallel = state.range(0) != 0;
  for (auto _ : state)
    benchmark::DoNotOptimize(local_profile(s, 1.0, kKernel, 20, opts).bandwidths.data());
}

void BM_Study(benchmark::State& state) {
  StudyConfig c;
  c.n = 100;
  c.replications = 16;
  c.seed = 1;
  c.parallel = state.range(0) != 0;
  for (auto _ : state) benchmark::DoNotOptimize(run_study(c).summary.mean_h0);
}

}  // namespace

BENCHMARK(BM_LscvReference)->RangeMultiplier(4)->Range(64, 4096)->Complexity();
BENCHMARK(BM_LscvFast)->RangeMultiplier(4)->Range(64, 4096)->Complexity();
BENCHMARK(BM_IseReference)->Arg(100)->Arg(500);
BENCHMARK(BM_IseFast)->Arg(100)->Arg(500);
BENCHMARK(BM_LocalReference)->Arg(100)->Arg(500);
BENCHMARK(BM_LocalFast)->Arg(100)->Arg(500);
BENCHMARK(BM_SelectIcv)->ArgName("parallel")->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_LocalProfile)->ArgName("parallel")->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Study)->ArgName("parallel")->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
