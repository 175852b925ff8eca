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

#include "sxrkit/decomposition.hpp"

#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "sxrkit/error.hpp"

namespace sxrkit {
namespace {

using testing::rel_error;
using testing::rel_error_to;

TEST(Decompose, PerfectEnhancement) {
  std::mt19937_64 rng(1);
  const auto refs = testing::random_refs(128, rng);
  const auto d = decompose(refs.source, refs, 8);
  EXPECT_LE(rel_error(d.target.vector(), refs.source.vector()), 1e-10);
  const double e = refs.source.energy();
  EXPECT_LE(d.interf_err.energy(), 1e-20 * e);
  EXPECT_LE(d.noise_err.energy(), 1e-20 * e);
  EXPECT_LE(d.artif_err.energy(), 1e-20 * e);
}

TEST(Decompose, ObservedHasNoArtifacts) {
  std::mt19937_64 rng(2);
  const auto refs = testing::random_refs(96, rng);
  for (std::size_t L : {1u, 4u}) {
    const auto d = decompose(refs.observed, refs, L);
    EXPECT_LE(std::sqrt(d.artif_err.energy() / refs.observed.energy()), 1e-10);
    const std::vector<Waveform> s{refs.source};
    EXPECT_LE(rel_error(d.target.vector(), project(refs.observed, s, L).vector()), 1e-10);
  }
}

TEST(Decompose, RandomMatchesDenseOracle) {
  std::mt19937_64 rng(3);
  const auto refs = testing::random_refs(64, rng);
  const auto x = testing::random_waveform(64, rng);
  const auto d = decompose(x, refs, 4);
  const auto o = testing::dense_decompose(x.vector(), refs, 4);
  const double scale = x.energy();
  EXPECT_LE(rel_error(d.target.vector(), o.target), 1e-8);
  EXPECT_LE(rel_error(d.interf_err.vector(), o.interf), 1e-8);
  EXPECT_LE(rel_error(d.noise_err.vector(), o.noise), 1e-8);
  EXPECT_LE(rel_error(d.artif_err.vector(), o.artif), 1e-8);
  EXPECT_LE(rel_error_to(d.artif_err.vector(), o.artif, scale), 1e-8);
}

TEST(Decompose, SingleTalkerInterferenceIsExactlyZero) {
  std::mt19937_64 rng(4);
  const auto refs = testing::random_refs(80, rng, false);
  const auto d = decompose(testing::random_waveform(80, rng), refs, 3);
  EXPECT_TRUE(d.single_talker);
  for (std::size_t t = 0; t < 80; ++t) EXPECT_EQ(d.interf_err[t], 0.0);
}

TEST(Decompose, SilentInterfererBehavesAsSingleTalker) {
  std::mt19937_64 rng(5);
  auto refs = testing::random_refs(80, rng, false);
  refs.interference = Waveform::zeros(80, 16000);
  const auto d = decompose(testing::random_waveform(80, rng), refs, 3);
  EXPECT_EQ(d.interf_err.energy(), 0.0);
}

TEST(Decompose, SilentEverythingGivesPureArtifact) {
  std::mt19937_64 rng(6);
  const auto z = Waveform::zeros(40, 16000);
  const ReferenceSet refs{z, std::nullopt, z, z};
  const auto x = testing::random_waveform(40, rng);
  const auto d = decompose(x, refs, 2);
  EXPECT_EQ(d.target.energy(), 0.0);
  EXPECT_EQ(d.artif_err.vector(), x.vector());
}

TEST(Decompose, SumIdentityAndNesting) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t T = 32 + static_cast<std::size_t>(trial) * 13;
    const std::size_t L = std::size_t{1} << (trial % 4);
    const auto refs = testing::random_refs(T, rng, trial % 3 != 0);
    const auto x = testing::random_waveform(T, rng);
    const Decomposer dec(refs, L);
    const auto d = dec.decompose(x);
    EXPECT_LE(rel_error(d.reassemble().vector(), x.vector()), 1e-10);
    const double ps = d.target.energy();
    const double psi = (d.target + d.interf_err).energy();
    const double psin = (d.target + d.interf_err + d.noise_err).energy();
    EXPECT_LE(ps, psi * (1 + 1e-12));
    EXPECT_LE(psi, psin * (1 + 1e-12));
    EXPECT_LE(psin, x.energy() * (1 + 1e-12));
  }
}

TEST(Decompose, Orthogonality) {
  std::mt19937_64 rng(8);
  const std::size_t T = 150, L = 5;
  const auto refs = testing::random_refs(T, rng);
  const auto x = testing::random_waveform(T, rng);
  const auto d = decompose(x, refs, L);
  auto check = [&](const Waveform& e, const Waveform& r) {
    const DelayedBasis b(r, L);
    for (std::size_t tau = 0; tau < L; ++tau) {
      const auto col = b.column(tau);
      const double c = std::abs(dot(e.samples(), col)) /
                       (std::sqrt(e.energy() * squared_norm(col)) + 1e-300);
      EXPECT_LE(c, 1e-8);
    }
  };
  for (const auto* r : {&refs.source, &*refs.interference, &refs.noise}) check(d.artif_err, *r);
  check(d.interf_err, refs.source);
  check(d.noise_err, refs.source);
  check(d.noise_err, *refs.interference);
}

TEST(Decompose, Linearity) {
  std::mt19937_64 rng(9);
  const std::size_t T = 100;
  const auto refs = testing::random_refs(T, rng);
  const Decomposer dec(refs, 4);
  const auto x1 = testing::random_waveform(T, rng);
  const auto x2 = testing::random_waveform(T, rng);
  const double a = 0.7, b = -2.5;
  const auto d = dec.decompose(x1.scaled(a) + x2.scaled(b));
  const auto d1 = dec.decompose(x1);
  const auto d2 = dec.decompose(x2);
  auto lin = [&](const Waveform& u, const Waveform& v) { return (u.scaled(a) + v.scaled(b)).vector(); };
  EXPECT_LE(rel_error(d.target.vector(), lin(d1.target, d2.target)), 1e-9);
  EXPECT_LE(rel_error(d.interf_err.vector(), lin(d1.interf_err, d2.interf_err)), 1e-9);
  EXPECT_LE(rel_error(d.noise_err.vector(), lin(d1.noise_err, d2.noise_err)), 1e-9);
  EXPECT_LE(rel_error(d.artif_err.vector(), lin(d1.artif_err, d2.artif_err)), 1e-9);
}

TEST(Decompose, Errors) {
  std::mt19937_64 rng(10);
  const auto refs = testing::random_refs(16, rng);
  EXPECT_THROW(decompose(refs.source, refs, 17), UsageError);
  EXPECT_THROW(decompose(testing::random_waveform(15, rng), refs, 2), DataError);
  EXPECT_THROW(decompose(Waveform(std::vector<double>(16, 1.0), 8000), refs, 2), DataError);
}

}  // namespace
}  // namespace sxrkit
