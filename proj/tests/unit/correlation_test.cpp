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

#include "sxrkit/correlation.hpp"

#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"

namespace sxrkit {
namespace {

TEST(CorrelationBank, ImpulseGramIsIdentityAtLagZero) {
  std::vector<double> delta(16, 0.0);
  delta[0] = 1.0;
  const CorrelationBank bank({delta}, 4);
  const auto& G = bank.gram();
  for (int p = 0; p < 4; ++p)
    for (int q = 0; q < 4; ++q) EXPECT_NEAR(G(p, q), p == q ? 1.0 : 0.0, 1e-14);
}

TEST(CorrelationBank, OnesLagOneAutocorrelation) {
  const std::size_t T = 100;
  const CorrelationBank bank({std::vector<double>(T, 1.0)}, 2);
  EXPECT_NEAR(bank.gram()(0, 1), static_cast<double>(T - 1), 1e-9);
  EXPECT_NEAR(bank.gram()(0, 0), static_cast<double>(T), 1e-9);
  // second column is zero at t = 0, so its energy is T - 1 too
  EXPECT_NEAR(bank.gram()(1, 1), static_cast<double>(T - 1), 1e-9);
}

TEST(CorrelationBank, RandomMatchesDirectCorrelation) {
  std::mt19937_64 rng(11);
  const std::size_t T = 256, L = 8;
  std::vector<std::vector<double>> refs{testing::random_vector(T, rng),
                                        testing::random_vector(T, rng),
                                        testing::random_vector(T, rng)};
  const CorrelationBank bank(refs, L);
  const Eigen::MatrixXd want = testing::direct_gram(refs, L);
  EXPECT_LE((bank.gram() - want).norm() / want.norm(), 1e-9);

  const auto x = testing::random_vector(T, rng);
  const Eigen::VectorXd got = bank.cross(x, 3);
  for (std::size_t f = 0; f < 3; ++f)
    for (std::size_t tau = 0; tau < L; ++tau) {
      std::vector<double> col(T, 0.0);
      for (std::size_t t = tau; t < T; ++t) col[t] = refs[f][t - tau];
      double d = 0.0;
      for (std::size_t t = 0; t < T; ++t) d += col[t] * x[t];
      EXPECT_NEAR(got(static_cast<Eigen::Index>(f * L + tau)), d, 1e-9 * std::abs(d) + 1e-9);
    }
}

TEST(CorrelationBank, GramIsSymmetric) {
  std::mt19937_64 rng(3);
  const CorrelationBank bank({testing::random_vector(97, rng), testing::random_vector(97, rng)}, 5);
  const auto& G = bank.gram();
  EXPECT_LE((G - G.transpose()).norm(), 1e-12 * G.norm());
}

TEST(CorrelationBank, SynthesizeMatchesDenseBasis) {
  std::mt19937_64 rng(5);
  const std::size_t T = 73, L = 6;
  std::vector<std::vector<double>> refs{testing::random_vector(T, rng),
                                        testing::random_vector(T, rng)};
  const CorrelationBank bank(refs, L);
  Eigen::VectorXd c(static_cast<Eigen::Index>(2 * L));
  for (Eigen::Index k = 0; k < c.size(); ++k) c(k) = std::sin(0.3 * static_cast<double>(k));
  const auto got = bank.synthesize(c);
  const Eigen::VectorXd want = testing::dense_basis(refs, L) * c;
  for (std::size_t t = 0; t < T; ++t) EXPECT_NEAR(got[t], want(static_cast<Eigen::Index>(t)), 1e-11);
}

TEST(CorrelationBank, CorrelateConvention) {
  // a = (1, 2, 3), b = (1, 0, 0): sum_u a[u + lag] b[u] = a[lag]
  const CorrelationBank bank({{1.0, 2.0, 3.0}, {1.0, 0.0, 0.0}}, 3);
  const auto c = bank.correlate(0, 1);
  ASSERT_EQ(c.size(), 5u);
  EXPECT_NEAR(c[2], 1.0, 1e-12);
  EXPECT_NEAR(c[3], 2.0, 1e-12);
  EXPECT_NEAR(c[4], 3.0, 1e-12);
  EXPECT_NEAR(c[0], 0.0, 1e-12);
}

}  // namespace
}  // namespace sxrkit
