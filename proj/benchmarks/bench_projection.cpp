// Copyright 2026 The sxrkit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <benchmark/benchmark.h>

#include <random>

#include "oracles.hpp"
#include "sxrkit/correlation.hpp"
#include "sxrkit/decomposition.hpp"
#include "sxrkit/metrics.hpp"
#include "sxrkit/projection.hpp"

namespace {

using sxrkit::testing::random_refs;
using sxrkit::testing::random_vector;

std::vector<std::vector<double>> families(std::size_t T, std::size_t k, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<std::vector<double>> out;
  for (std::size_t i = 0; i < k; ++i) out.push_back(random_vector(T, rng));
  return out;
}

// Arg(0) = T, Arg(1) = L; two reference families.
void BM_GramFft(benchmark::State& state) {
  const auto T = static_cast<std::size_t>(state.range(0));
  const auto L = static_cast<std::size_t>(state.range(1));
  const auto refs = families(T, 2, 1);
  for (auto _ : state) {
    sxrkit::CorrelationBank bank(refs, L);
    benchmark::DoNotOptimize(bank.gram().data());
  }
}
BENCHMARK(BM_GramFft)
    ->Args({4000, 8})->Args({4000, 32})->Args({4000, 128})
    ->Args({16000, 512})
    ->Unit(benchmark::kMillisecond);

void BM_GramDirect(benchmark::State& state) {
  const auto T = static_cast<std::size_t>(state.range(0));
  const auto L = static_cast<std::size_t>(state.range(1));
  const auto refs = families(T, 2, 1);
  for (auto _ : state) {
    Eigen::MatrixXd g = sxrkit::testing::direct_gram(refs, L);
    benchmark::DoNotOptimize(g.data());
  }
}
BENCHMARK(BM_GramDirect)
    ->Args({4000, 8})->Args({4000, 32})->Args({4000, 128})
    ->Unit(benchmark::kMillisecond);

// One projection with the factorization already cached; three families.
void BM_ProjectionSolve(benchmark::State& state) {
  const std::size_t T = 16000;
  const auto L = static_cast<std::size_t>(state.range(0));
  std::vector<sxrkit::Waveform> refs;
  for (auto& f : families(T, 3, 2)) refs.emplace_back(std::move(f), 16000);
  const sxrkit::ProjectionContext ctx(refs, L);
  std::mt19937_64 rng(3);
  const auto x = random_vector(T, rng);
  for (auto _ : state) benchmark::DoNotOptimize(ctx.project(x));
}
BENCHMARK(BM_ProjectionSolve)->Arg(64)->Arg(256)->Arg(512)->Unit(benchmark::kMillisecond);

// Full evaluation of one 1 s multi-talker utterance at L = 512, setup included.
void BM_DecomposeL512(benchmark::State& state) {
  std::mt19937_64 rng(4);
  const auto refs = random_refs(16000, rng, true);
  const sxrkit::Waveform x(random_vector(16000, rng), 16000);
  for (auto _ : state) {
    const sxrkit::Decomposition d = sxrkit::Decomposer(refs, 512).decompose(x);
    benchmark::DoNotOptimize(sxrkit::sxr(d));
  }
}
BENCHMARK(BM_DecomposeL512)->Unit(benchmark::kMillisecond);

// Same references, many candidate signals (DSA / OA sweeps reuse the factors).
void BM_DecomposeReuseL512(benchmark::State& state) {
  std::mt19937_64 rng(5);
  const auto refs = random_refs(16000, rng, true);
  const sxrkit::Decomposer dec(refs, 512);
  const sxrkit::Waveform x(random_vector(16000, rng), 16000);
  for (auto _ : state) benchmark::DoNotOptimize(sxrkit::sxr(dec.decompose(x)));
}
BENCHMARK(BM_DecomposeReuseL512)->Unit(benchmark::kMillisecond);

}  // namespace
