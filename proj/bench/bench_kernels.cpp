// Serial reference vs OpenMP drivers for the trial batch and the exhaustive
// sweep. Run with OMP_NUM_THREADS set to compare scaling.

#include <benchmark/benchmark.h>

#include "epdlog/kernels.hpp"

namespace {

using namespace epdlog;

TrialConfig config_for(unsigned bits) {
    Rng rng(bits * 7919ULL);
    const Natural p = random_prime(bits, rng);
    return {p, factorize(Natural(p - 1)), rng.next(), OracleKind::pohlig_hellman};
}

void BM_TrialsSerial(benchmark::State& state) {
    const TrialConfig config = config_for(static_cast<unsigned>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(run_trials_serial(config, 64));
    state.SetItemsProcessed(state.iterations() * 64);
}

void BM_TrialsParallel(benchmark::State& state) {
    const TrialConfig config = config_for(static_cast<unsigned>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(run_trials_parallel(config, 64));
    state.SetItemsProcessed(state.iterations() * 64);
}

void BM_SweepSerial(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(sweep_ring_serial(state.range(0)));
}

void BM_SweepParallel(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(sweep_ring_parallel(state.range(0)));
}

BENCHMARK(BM_TrialsSerial)->Arg(16)->Arg(32)->Arg(48)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_TrialsParallel)->Arg(16)->Arg(32)->Arg(48)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_SweepSerial)->Arg(3)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_SweepParallel)->Arg(3)->Unit(benchmark::kMillisecond)->UseRealTime();

}  // namespace

BENCHMARK_MAIN();
