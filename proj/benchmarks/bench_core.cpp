// Copyright 2026 The noclone Authors
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

#include <benchmark/benchmark.h>

#include "noclone/noclone.hpp"

namespace {

using namespace noclone;

StateFamily family(Index n, Index dim, std::uint64_t seed) {
  sampling::Rng rng(seed);
  return sampling::random_nonorthogonal_family(n, dim, 0.05, rng);
}

void BM_Gram(benchmark::State& state) {
  const StateFamily f = family(state.range(0), 8, 1);
  for (auto _ : state) benchmark::DoNotOptimize(gram(f));
}
BENCHMARK(BM_Gram)->RangeMultiplier(2)->Range(2, 32);

void BM_IsPsd(benchmark::State& state) {
  sampling::Rng rng(2);
  const Matrix g = gram(sampling::random_family(state.range(0), 64, rng)).entries();
  for (auto _ : state) benchmark::DoNotOptimize(is_psd(g));
}
BENCHMARK(BM_IsPsd)->RangeMultiplier(2)->Range(2, 64);

void BM_UnitaryLinking(benchmark::State& state) {
  sampling::Rng rng(3);
  const Index n = state.range(0);
  const StateFamily a = family(n, n, 3);
  const StateFamily b = sampling::rotate(a, sampling::haar_unitary(n, rng));
  for (auto _ : state) benchmark::DoNotOptimize(unitary_linking(a, b));
}
BENCHMARK(BM_UnitaryLinking)->RangeMultiplier(2)->Range(2, 16);

void BM_CloneFeasiblePure(benchmark::State& state) {
  sampling::Rng rng(4);
  const Index n = state.range(0);
  const StateFamily psi = family(n, 4, 4);
  const StateFamily alpha = tensor(psi, sampling::random_family(n, 2, rng));
  for (auto _ : state) benchmark::DoNotOptimize(clone_feasible_pure(psi, alpha));
}
BENCHMARK(BM_CloneFeasiblePure)->DenseRange(2, 5);

void BM_SolveCompletion(benchmark::State& state) {
  const double s = 1.0 / std::sqrt(2.0);
  const StateFamily psi{PureState({1.0, 0.0}), PureState({0.0, 1.0}), PureState({s, s})};
  const StateFamily alpha{PureState({1.0, 0.0}), PureState({1.0, 0.0}), PureState({0.0, 1.0})};
  const TransformProblem p = clone_problem(psi, alpha);
  for (auto _ : state) benchmark::DoNotOptimize(solve(p));
}
BENCHMARK(BM_SolveCompletion);

}  // namespace

BENCHMARK_MAIN();
