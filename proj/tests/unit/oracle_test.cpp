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

// Sanity checks on the test oracles themselves, against hand-computed values.

#include <gtest/gtest.h>

#include "oracles.hpp"

namespace sxrkit::testing {
namespace {

TEST(DenseOracle, ProjectsOntoConstantIsMean) {
  const auto p = dense_project({1.0, 2.0, 6.0}, {{1.0, 1.0, 1.0}}, 1);
  for (double v : p) EXPECT_NEAR(v, 3.0, 1e-14);
}

TEST(DenseOracle, DelayedImpulsesSpanHead) {
  // delta delayed 0..1 spans e0, e1 of R^4.
  const auto p = dense_project({5.0, -2.0, 7.0, 1.0}, {{1.0, 0.0, 0.0, 0.0}}, 2);
  const std::vector<double> want{5.0, -2.0, 0.0, 0.0};
  for (std::size_t t = 0; t < 4; ++t) EXPECT_NEAR(p[t], want[t], 1e-14);
}

TEST(DenseOracle, DuplicateReferenceIsRankOne) {
  const auto p = dense_project({0.0, 2.0}, {{1.0, 1.0}, {2.0, 2.0}}, 1);
  EXPECT_NEAR(p[0], 1.0, 1e-12);
  EXPECT_NEAR(p[1], 1.0, 1e-12);
}

TEST(DirectGram, OnesLagOne) {
  const auto G = direct_gram({{1.0, 1.0, 1.0, 1.0, 1.0}}, 2);
  EXPECT_DOUBLE_EQ(G(0, 0), 5.0);
  EXPECT_DOUBLE_EQ(G(0, 1), 4.0);
  EXPECT_DOUBLE_EQ(G(1, 1), 4.0);
}

TEST(MemoEditDistance, KnownPairs) {
  auto split = [](std::string s) {
    std::vector<std::string> out;
    for (char c : s) out.emplace_back(1, c);
    return out;
  };
  EXPECT_EQ(memo_edit_distance(split("kitten"), split("sitting")), 3u);
  EXPECT_EQ(memo_edit_distance(split("abc"), split("")), 3u);
  EXPECT_EQ(memo_edit_distance(split(""), split("ab")), 2u);
  EXPECT_EQ(memo_edit_distance(split("flaw"), split("lawn")), 2u);
}

TEST(AllSequences, Count) {
  // 1 + 3 + 9 + 27
  EXPECT_EQ(all_sequences({"a", "b", "c"}, 3).size(), 40u);
}

TEST(CentralDifference, Quadratic) {
  const auto g = central_difference(
      [](const std::vector<double>& x) { return x[0] * x[0] + 3.0 * x[1]; }, {2.0, 1.0}, 1e-4);
  EXPECT_NEAR(g[0], 4.0, 1e-8);
  EXPECT_NEAR(g[1], 3.0, 1e-8);
}

}  // namespace
}  // namespace sxrkit::testing
