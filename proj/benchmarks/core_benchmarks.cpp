#include <benchmark/benchmark.h>

#include <vector>

#include "cusumlab/covariance.hpp"
#include "cusumlab/cusum.hpp"
#include "cusumlab/experiment.hpp"
#include "cusumlab/rate_conditions.hpp"

using namespace cusumlab;

static void BM_BuildSigma(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(build_sigma({n, 2.0}));
    }
}
BENCHMARK(BM_BuildSigma)->Arg(100)->Arg(500)->Arg(2000);

static void BM_Cholesky(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const SquareMatrix m = build_sigma({n, 2.0});
    for (auto _ : state) {
        benchmark::DoNotOptimize(cholesky_factor(m));
    }
}
BENCHMARK(BM_Cholesky)->Arg(100)->Arg(500)->Arg(1000)->Unit(benchmark::kMillisecond);

static void BM_SampleRow(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const CholeskyFactor factor = cholesky_factor(build_sigma({n, 2.0}));
    StreamRng rng = derive_stream(1, 0.0, 0.0, n, 0);
    for (auto _ : state) {
        benchmark::DoNotOptimize(sample_row(factor, rng));
    }
}
BENCHMARK(BM_SampleRow)->Arg(100)->Arg(1000)->Arg(4000)->Unit(benchmark::kMicrosecond);

static void BM_CusumProfile(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    StreamRng rng = derive_stream(2, 0.0, 0.0, n, 0);
    std::vector<double> y(n);
    for (double& v : y) {
        v = rng.next_normal();
    }
    for (auto _ : state) {
        benchmark::DoNotOptimize(cusum_profile(y, {0.5}));
    }
}
BENCHMARK(BM_CusumProfile)->Arg(500)->Arg(4000)->Unit(benchmark::kMicrosecond);

static void BM_Replication(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    ExperimentConfig cfg = desk_profile();
    const CholeskyFactor factor = cholesky_factor(build_sigma({n, cfg.sigma}));
    int rep = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(
            run_replication(cfg, 0.5, 0.0, n, rep++, factor));
    }
}
BENCHMARK(BM_Replication)->Arg(500)->Arg(2000)->Unit(benchmark::kMicrosecond);

static void BM_PartialSumDiagnostic(benchmark::State& state) {
    const RateParams params{3.0, 0.4, -0.1};
    for (auto _ : state) {
        benchmark::DoNotOptimize(
            partial_sum_diagnostic(params, state.range(0)));
    }
}
BENCHMARK(BM_PartialSumDiagnostic)->Arg(100000)->Arg(1000000)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
