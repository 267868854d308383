// Copyright 2026 The bosonbudget Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// OpenMP kernels against their serial references.

#include <benchmark/benchmark.h>

#include "bosonbudget/noise_model.hpp"
#include "bosonbudget/permanent.hpp"
#include "bosonbudget/random_ensembles.hpp"

using namespace bosonbudget;

namespace {

ComplexMatrix bench_matrix(int n) {
    RngStream rng(77);
    return haar_unitary(n, rng).matrix();
}

DeviceConfig bench_device(int n, int m) {
    RngStream rng(78);
    return {haar_unitary(m, rng), n, SourceModel{{0.02, 0.96, 0.02}}, DetectorModel{0.05, 1e-3}};
}

void BM_RyserParallel(benchmark::State& state) {
    const auto a = bench_matrix(static_cast<int>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(permanent_ryser(a));
}

void BM_RyserSerial(benchmark::State& state) {
    const auto a = bench_matrix(static_cast<int>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(reference::permanent_ryser_serial(a));
}

void BM_ClickTableParallel(benchmark::State& state) {
    const auto dev = bench_device(3, static_cast<int>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(output_click_distribution(dev));
}

void BM_ClickTableSerial(benchmark::State& state) {
    const auto dev = bench_device(3, static_cast<int>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(reference::output_click_distribution_serial(dev));
}

void BM_DistanceParallel(benchmark::State& state) {
    const auto dev = bench_device(3, static_cast<int>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(distance_parts(dev));
}

void BM_DistanceSerial(benchmark::State& state) {
    const auto dev = bench_device(3, static_cast<int>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(reference::distance_parts_serial(dev));
}

}  // namespace

BENCHMARK(BM_RyserParallel)->DenseRange(12, 20, 4)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_RyserSerial)->DenseRange(12, 20, 4)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_ClickTableParallel)->Arg(8)->Arg(12)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ClickTableSerial)->Arg(8)->Arg(12)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_DistanceParallel)->Arg(40)->Arg(80)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_DistanceSerial)->Arg(40)->Arg(80)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
