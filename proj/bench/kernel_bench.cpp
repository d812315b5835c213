// Copyright 2026 The esgames Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// OpenMP subset sweeps against their serial references.

#include <benchmark/benchmark.h>

#include <random>

#include "esg/kernels.hpp"
#include "esg/structure.hpp"

namespace {

// A chain-free structure with random binary conflicts over n events.
esg::Structure conflicted(int n) {
  std::mt19937 rng(42);
  std::bernoulli_distribution conflict(0.05);
  std::vector<std::string> names;
  for (int i = 0; i < n; ++i) names.push_back("e" + std::to_string(100 + i));
  esg::Consistency c;
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b)
      if (conflict(rng)) c.sets.push_back(esg::bit(a) | esg::bit(b));
  return esg::Structure::make(esg::Kind::kPrime, names, {}, {}, c);
}

template <bool kParallel>
void BM_FilterSubsets(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const esg::Structure s = conflicted(n);
  auto pred = [&](esg::Mask x) { return s.consistent(x); };
  for (auto _ : state) {
    auto out = kParallel ? esg::kernels::filter_subsets(n, pred)
                         : esg::kernels::filter_subsets_serial(n, pred);
    benchmark::DoNotOptimize(out);
  }
  state.SetItemsProcessed(state.iterations() * (int64_t{1} << n));
}

template <bool kParallel>
void BM_FirstFailure(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const esg::Structure s = conflicted(n);
  // Fails only on the full set, so the whole space is swept.
  const esg::Mask full = esg::bit(n) - 1;
  auto pred = [&](esg::Mask x) {
    benchmark::DoNotOptimize(s.consistent(x));
    return x != full;
  };
  for (auto _ : state) {
    auto out = kParallel ? esg::kernels::first_failure(n, pred)
                         : esg::kernels::first_failure_serial(n, pred);
    benchmark::DoNotOptimize(out);
  }
  state.SetItemsProcessed(state.iterations() * (int64_t{1} << n));
}

}  // namespace

BENCHMARK(BM_FilterSubsets<false>)->Name("filter_subsets/serial")->DenseRange(14, 20, 3)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_FilterSubsets<true>)->Name("filter_subsets/openmp")->DenseRange(14, 20, 3)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_FirstFailure<false>)->Name("first_failure/serial")->DenseRange(14, 20, 3)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_FirstFailure<true>)->Name("first_failure/openmp")->DenseRange(14, 20, 3)->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
