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

#include "sxrkit/stft.hpp"

#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "sxrkit/error.hpp"

namespace sxrkit {
namespace {

TEST(Stft, RoundTripDefaultConfig) {
  std::mt19937_64 rng(1);
  for (std::size_t T : {1u, 100u, 1024u, 5000u, 16000u}) {
    const auto x = testing::random_vector(T, rng);
    const Stft stft;
    const auto back = stft.synthesize(stft.analyze(x), T);
    EXPECT_LE(testing::rel_error(back, x), 1e-8) << T;
  }
}

TEST(Stft, RoundTripOddConfig) {
  std::mt19937_64 rng(2);
  const auto x = testing::random_vector(777, rng);
  const Stft stft({100, 30});
  EXPECT_LE(testing::rel_error(stft.synthesize(stft.analyze(x), x.size()), x), 1e-8);
}

TEST(Stft, LastFrameIsCenteredAtOrAfterLastSample) {
  const Stft stft;
  EXPECT_EQ(stft.num_frames(1), 1u);
  for (std::size_t T = 1; T < 3000; ++T) {
    const std::size_t last_center = (stft.num_frames(T) - 1) * 256;
    ASSERT_GE(last_center, T - 1) << T;
    ASSERT_LT(last_center, T - 1 + 256) << T;
  }
  EXPECT_EQ(stft.analyze(std::vector<double>(16000, 0.0)).bins, 513u);
}

TEST(Stft, RejectsBadConfig) {
  EXPECT_THROW(Stft({1024, 0}), UsageError);
  EXPECT_THROW(Stft({256, 512}), UsageError);
}

}  // namespace
}  // namespace sxrkit
