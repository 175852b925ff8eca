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
#include <string>

#include "sxrkit/wer.hpp"

namespace {

// Reference of n words over a 50-word vocabulary; the hypothesis edits about
// a fifth of them.
std::pair<sxrkit::Transcript, sxrkit::Transcript> pair_of(std::size_t n) {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<int> word(0, 49), op(0, 14);
  sxrkit::Transcript ref, hyp;
  for (std::size_t i = 0; i < n; ++i) {
    const std::string w = "w" + std::to_string(word(rng));
    ref.tokens.push_back(w);
    switch (op(rng)) {
      case 0: break;  // deletion
      case 1: hyp.tokens.push_back("x" + std::to_string(word(rng))); break;
      case 2:
        hyp.tokens.push_back(w);
        hyp.tokens.push_back("ins");
        break;
      default: hyp.tokens.push_back(w);
    }
  }
  return {ref, hyp};
}

void BM_WerAlign(benchmark::State& state) {
  const auto [ref, hyp] = pair_of(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(sxrkit::align(ref, hyp));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_WerAlign)->RangeMultiplier(4)->Range(16, 4096)->Complexity(benchmark::oNSquared);

}  // namespace
