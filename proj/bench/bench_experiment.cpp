#include <benchmark/benchmark.h>

#include "pamab/env.hpp"
#include "pamab/harness.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace {

pamab::RunConfig bench_config(int horizon) {
  pamab::RandomizedEnvironmentOptions o;
  o.dims.horizon = horizon;
  return pamab::randomized_environment(o);
}

// threads == 1 is the serial reference loop.
void BM_RunExperiment(benchmark::State& state) {
  const auto cfg = bench_config(static_cast<int>(state.range(0)));
  const int threads = static_cast<int>(state.range(1));
  for (auto _ : state) {
    auto result = pamab::run_experiment(cfg, {threads});
    benchmark::DoNotOptimize(result.records.data());
  }
  state.counters["trials"] = static_cast<double>(cfg.algorithms.size() * cfg.trials);
  state.counters["rounds/s"] = benchmark::Counter(
      static_cast<double>(cfg.algorithms.size() * cfg.trials) * cfg.dims.horizon,
      benchmark::Counter::kIsIterationInvariantRate);
}

void thread_args(benchmark::internal::Benchmark* b) {
  int max_threads = 1;
#ifdef _OPENMP
  max_threads = omp_get_max_threads();
#endif
  for (int horizon : {500, 5000}) {
    b->Args({horizon, 1});
    for (int t = 2; t <= std::max(2, max_threads); t *= 2) b->Args({horizon, t});
  }
}

BENCHMARK(BM_RunExperiment)->Apply(thread_args)->Unit(benchmark::kMillisecond)->UseRealTime();

void BM_SingleTrial(benchmark::State& state) {
  const auto cfg = bench_config(1000);
  const auto& spec = cfg.algorithms[static_cast<std::size_t>(state.range(0))];
  for (auto _ : state) benchmark::DoNotOptimize(pamab::run_trial(cfg, spec, 0).cumulative.back());
  state.SetLabel(spec.name);
}

BENCHMARK(BM_SingleTrial)->DenseRange(0, 9)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
