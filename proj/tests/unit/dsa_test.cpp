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

#include "sxrkit/dsa.hpp"

#include <gtest/gtest.h>

#include <filesystem>
#include <random>
#include <set>

#include "oracles.hpp"
#include "sxrkit/enhancers.hpp"
#include "sxrkit/error.hpp"
#include "sxrkit/synth.hpp"
#include "sxrkit/wav_io.hpp"

namespace sxrkit {
namespace {

class TempDir {
 public:
  explicit TempDir(const std::string& name)
      : path_(std::filesystem::temp_directory_path() / ("sxrkit_" + name)) {
    std::filesystem::remove_all(path_);
    std::filesystem::create_directories(path_);
  }
  ~TempDir() { std::filesystem::remove_all(path_); }
  const std::filesystem::path& path() const { return path_; }

 private:
  std::filesystem::path path_;
};

Decomposition wiener_decomposition(std::uint64_t seed, bool multi, std::size_t L = 32) {
  const auto refs = synth_mixture(8000, 16000, 0.0, multi ? std::optional<double>(5.0) : std::nullopt, seed);
  return decompose(oracle_wiener(refs), refs, L);
}

TEST(DsaSynthesize, IdentityReproducesInput) {
  std::mt19937_64 rng(1);
  const auto refs = testing::random_refs(128, rng);
  const auto x = testing::random_waveform(128, rng);
  const auto d = decompose(x, refs, 4);
  EXPECT_LE(testing::rel_error(dsa_synthesize(d, {1, 1, 1}).vector(), x.vector()), 1e-10);
}

TEST(DsaSynthesize, AllZeroIsTargetWithInfiniteMetrics) {
  std::mt19937_64 rng(2);
  const auto refs = testing::random_refs(128, rng);
  const auto d = decompose(testing::random_waveform(128, rng), refs, 4);
  const auto y = dsa_synthesize(d, {0, 0, 0});
  EXPECT_EQ(y.vector(), d.target.vector());
  const auto r = sxr(dsa_rescale(d, {0, 0, 0}));
  EXPECT_EQ(r.sdr.kind(), Decibel::Kind::kPosInf);
  EXPECT_EQ(r.sar.kind(), Decibel::Kind::kPosInf);
}

TEST(DsaSynthesize, ArtifactTenthRaisesSarByTwentyDb) {
  const auto d = wiener_decomposition(3, true);
  ASSERT_GT(d.artif_err.energy(), 0.0);
  const auto base = sxr(d);
  const auto scaled = dsa_rescale(d, {1, 1, 0.1});
  EXPECT_EQ(scaled.target.vector(), d.target.vector());
  EXPECT_NEAR(sxr(scaled).sar.value() - base.sar.value(), 20.0, 1e-9);
}

TEST(DsaSynthesize, SarStrictlyIncreasesAsArtifactShrinks) {
  const auto d = wiener_decomposition(4, false);
  double prev = -1e300;
  for (double wa = 1.5; wa > 0.05; wa -= 0.1) {
    const double sar = sxr(dsa_rescale(d, {1, 1, wa})).sar.value();
    EXPECT_GT(sar, prev);
    prev = sar;
  }
}

TEST(DsaSynthesize, RejectsNegativeScale) {
  std::mt19937_64 rng(5);
  const auto refs = testing::random_refs(32, rng);
  const auto d = decompose(refs.observed, refs, 1);
  EXPECT_THROW(dsa_synthesize(d, {1, -0.1, 1}), UsageError);
  EXPECT_THROW(dsa_synthesize(d, {1, 1, std::nan("")}), UsageError);
}

TEST(DsaGrid, DefaultAxisAndCounts) {
  const auto axis = default_dsa_axis();
  ASSERT_EQ(axis.size(), 15u);
  EXPECT_DOUBLE_EQ(axis.front(), 0.1);
  EXPECT_DOUBLE_EQ(axis.back(), 1.5);
  const DsaGrid grid;
  EXPECT_EQ(grid.points(false).size(), 3375u);
  EXPECT_EQ(grid.points(true).size(), 225u);
  EXPECT_THROW((DsaGrid{{}, {1.0}, {1.0}}.points(false)), UsageError);
}

TEST(DsaLocator, FixedPrecisionAndUnique) {
  EXPECT_EQ(dsa_locator("u1", {0.1, 1.0, 1.5}), "u1_i0.100_n1.000_a1.500.wav");
  std::set<std::string> seen;
  for (const auto& w : DsaGrid{}.points(false)) ASSERT_TRUE(seen.insert(dsa_locator("x", w)).second);
}

std::vector<DsaUtterance> small_dataset(bool multi) {
  std::vector<DsaUtterance> ds;
  for (std::uint64_t k = 0; k < 2; ++k) {
    ds.push_back({"utt" + std::to_string(k),
                  synth_mixture(3000, 16000, 5.0, multi ? std::optional<double>(5.0) : std::nullopt, 10 + k),
                  Transcript::parse("hello world")});
  }
  return ds;
}

TEST(DsaGridRun, IdentityGridWritesEnhancedSignals) {
  TempDir dir("dsa_identity");
  const auto ds = small_dataset(true);
  DsaOptions opts;
  opts.signal_dir = dir.path();
  opts.num_delays = 16;
  const auto m = dsa_grid_run(ds, [](const ReferenceSet& r) { return oracle_wiener(r); },
                              DsaGrid{{1.0}, {1.0}, {1.0}}, opts);
  ASSERT_EQ(m.entries.size(), 2u);
  EXPECT_TRUE(m.failures.empty());
  for (std::size_t k = 0; k < 2; ++k) {
    const auto enh = oracle_wiener(ds[k].refs);
    const auto got = read_wav(dir.path() / m.entries[k].locator);
    EXPECT_LE(testing::rel_error(got.vector(), enh.vector()), 1e-10);
    EXPECT_TRUE(m.entries[k].metrics.has_value());
    EXPECT_FALSE(m.entries[k].wer().has_value());
  }
}

TEST(DsaGridRun, SingleTalkerCollapsesInterferenceAxis) {
  TempDir dir("dsa_collapse");
  auto ds = small_dataset(false);
  ds.erase(ds.begin() + 1, ds.end());
  DsaOptions opts;
  opts.signal_dir = dir.path();
  opts.num_delays = 8;
  opts.compute_metrics = false;
  const DsaGrid grid{{0.5, 1.0, 1.5}, {0.5, 1.0}, {0.5, 1.0}};
  const auto m = dsa_grid_run(ds, [](const ReferenceSet& r) { return oracle_wiener(r); }, grid, opts);
  ASSERT_EQ(m.entries.size(), 4u);
  EXPECT_TRUE(m.entries.front().interf_collapsed);

  // Every value of the interference axis gives the same signal.
  const auto d = decompose(oracle_wiener(ds[0].refs), ds[0].refs, 8);
  for (double wi : grid.interf) {
    EXPECT_EQ(dsa_synthesize(d, {wi, 0.5, 1.0}).vector(), dsa_synthesize(d, {0.5, 0.5, 1.0}).vector());
  }
}

TEST(DsaGridRun, AsrHookAttachesWer) {
  TempDir dir("dsa_asr");
  const auto ds = small_dataset(true);
  DsaOptions opts;
  opts.signal_dir = dir.path();
  opts.num_delays = 4;
  opts.asr = make_command_asr("test -f {wav} && echo hello there");
  const auto m = dsa_grid_run(ds, [](const ReferenceSet& r) { return r.observed; },
                              DsaGrid{{1.0}, {0.5, 1.0}, {1.0}}, opts);
  ASSERT_EQ(m.entries.size(), 4u);
  for (const auto& e : m.entries) {
    ASSERT_FALSE(e.error.has_value()) << *e.error;
    EXPECT_EQ(e.hypothesis->str(), "hello there");
    EXPECT_DOUBLE_EQ(*e.wer(), 0.5);
  }
}

TEST(DsaGridRun, AsrHookWritingHypothesisFile) {
  TempDir dir("dsa_asr_file");
  auto ds = small_dataset(true);
  ds.erase(ds.begin() + 1, ds.end());
  DsaOptions opts;
  opts.signal_dir = dir.path();
  opts.num_delays = 4;
  opts.asr = make_command_asr("test -f {wav} && echo hello world > {hyp}");
  const auto m = dsa_grid_run(ds, [](const ReferenceSet& r) { return r.observed; },
                              DsaGrid{{1.0}, {1.0}, {1.0}}, opts);
  ASSERT_EQ(m.entries.size(), 1u);
  EXPECT_DOUBLE_EQ(*m.entries[0].wer(), 0.0);
}

TEST(DsaGridRun, AsrFailureMarksEntryAndContinues) {
  TempDir dir("dsa_asr_fail");
  const auto ds = small_dataset(true);
  DsaOptions opts;
  opts.signal_dir = dir.path();
  opts.num_delays = 4;
  opts.asr = make_command_asr("false {wav}");
  const auto m = dsa_grid_run(ds, [](const ReferenceSet& r) { return r.observed; },
                              DsaGrid{{1.0}, {1.0}, {0.5, 1.0}}, opts);
  ASSERT_EQ(m.entries.size(), 4u);
  for (const auto& e : m.entries) {
    EXPECT_TRUE(e.error.has_value());
    EXPECT_FALSE(e.wer().has_value());
    EXPECT_TRUE(e.metrics.has_value());
  }
  EXPECT_THROW(make_command_asr("no placeholder"), UsageError);
}

TEST(DsaGridRun, EnhancerFailureAbortsOnlyThatUtterance) {
  TempDir dir("dsa_fail");
  const auto ds = small_dataset(true);
  DsaOptions opts;
  opts.signal_dir = dir.path();
  opts.num_delays = 4;
  opts.workers = 2;
  const auto m = dsa_grid_run(
      ds,
      [&](const ReferenceSet& r) -> Waveform {
        if (r.observed == ds[0].refs.observed) throw DataError("enhancer exploded");
        return r.observed;
      },
      DsaGrid{{1.0}, {1.0}, {1.0}}, opts);
  ASSERT_EQ(m.failures.size(), 1u);
  EXPECT_EQ(m.failures[0].utterance, "utt0");
  EXPECT_NE(m.failures[0].reason.find("exploded"), std::string::npos);
  ASSERT_EQ(m.entries.size(), 1u);
  EXPECT_EQ(m.entries[0].utterance, "utt1");
}

}  // namespace
}  // namespace sxrkit
