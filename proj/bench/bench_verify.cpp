// SPDX-License-Identifier: MIT
#include <benchmark/benchmark.h>

#include "finsler/curvature.hpp"
#include "finsler/metrics.hpp"
#include "finsler/verify.hpp"

using namespace finsler;

namespace {

SuiteOptions options(Suite suite, int samples) {
    SuiteOptions o;
    o.suite = suite;
    o.spec = make_I(3, 4, 1.0, 2);
    o.samples = samples;
    return o;
}

void BM_SuiteParallel(benchmark::State& state) {
    SuiteOptions o = options(static_cast<Suite>(state.range(0)), 64);
    for (auto _ : state)
        benchmark::DoNotOptimize(run_suite(o));
    state.SetItemsProcessed(state.iterations() * o.samples);
}

void BM_SuiteSerial(benchmark::State& state) {
    SuiteOptions o = options(static_cast<Suite>(state.range(0)), 64);
    for (auto _ : state)
        benchmark::DoNotOptimize(run_suite_serial(o));
    state.SetItemsProcessed(state.iterations() * o.samples);
}

void BM_Metric(benchmark::State& state) {
    DomainSpec s = make_I(static_cast<int>(state.range(0)), static_cast<int>(state.range(0)), 1.0, 3);
    CMat z = sample_point(s, 1), v = sample_tangent(s, 2);
    for (auto _ : state)
        benchmark::DoNotOptimize(metric(s, z, v));
}

void BM_Sectional(benchmark::State& state) {
    DomainSpec s = make_I(static_cast<int>(state.range(0)), static_cast<int>(state.range(0)), 1.0, 3);
    CMat z = sample_point(s, 1), v = sample_tangent(s, 2);
    for (auto _ : state)
        benchmark::DoNotOptimize(sectional(s, z, v));
}

} // namespace

BENCHMARK(BM_SuiteParallel)->DenseRange(0, 4)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_SuiteSerial)->DenseRange(0, 4)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_Metric)->Arg(2)->Arg(4)->Arg(8);
BENCHMARK(BM_Sectional)->Arg(2)->Arg(4)->Arg(8);

BENCHMARK_MAIN();
