// Copyright 2026 The dnfourier Authors.
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

// Parallel kernels against their serial references. Set OMP_NUM_THREADS to
// vary the worker count; the serial variants ignore it.

#include <benchmark/benchmark.h>

#include "dnfourier/dnf.hpp"
#include "dnfourier/fourier.hpp"
#include "dnfourier/generators.hpp"

namespace {

using namespace dnfourier;

BooleanFunction random_function(int n) {
  SplitMix64 rng(static_cast<std::uint64_t>(n));
  return BooleanFunction::from_predicate(n, [&](std::uint64_t) { return rng.coin(); });
}

Dnf bench_dnf(int n) { return random_read_k(n, n, 4, 4, false, static_cast<std::uint64_t>(n)); }

void BM_Transform(benchmark::State& state) {
  const BooleanFunction f = random_function(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(fourier_transform(f));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(f.table_size()));
}

void BM_TransformSerial(benchmark::State& state) {
  const BooleanFunction f = random_function(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(fourier_transform_serial(f));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(f.table_size()));
}

void BM_Evaluate(benchmark::State& state) {
  const Dnf d = bench_dnf(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(evaluate(d));
  state.SetItemsProcessed(state.iterations() * (std::int64_t{1} << d.num_vars()));
}

void BM_EvaluateSerial(benchmark::State& state) {
  const Dnf d = bench_dnf(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(evaluate_serial(d));
  state.SetItemsProcessed(state.iterations() * (std::int64_t{1} << d.num_vars()));
}

}  // namespace

BENCHMARK(BM_Transform)->DenseRange(12, 20, 4)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_TransformSerial)->DenseRange(12, 20, 4)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_Evaluate)->DenseRange(12, 20, 4)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_EvaluateSerial)->DenseRange(12, 20, 4)->Unit(benchmark::kMicrosecond);

BENCHMARK_MAIN();
