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

// Black-box runs of the sxrkit binary against the bundled fixtures.

#include <gtest/gtest.h>
#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>
#include <string>
#include <vector>

#include "sxrkit/wav_io.hpp"

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

const fs::path kFixtures = SXRKIT_FIXTURE_DIR;

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<json> json_lines(const std::string& text) {
  std::vector<json> out;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty()) out.push_back(json::parse(line));
  }
  return out;
}

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) out.push_back(line);
  return out;
}

struct Result {
  int code = -1;
  std::string out, err;
};

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    const auto* info = ::testing::UnitTest::GetInstance()->current_test_info();
    dir_ = fs::temp_directory_path() /
           ("sxrkit_cli_" + std::string(info->name()) + "_" + std::to_string(::getpid()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override {
    if (!HasFailure()) fs::remove_all(dir_);
  }

  // env is a prefix such as "SXRKIT_WORKERS=2"; args are passed through a shell.
  Result run(const std::string& args, const std::string& env = "") {
    const fs::path out = dir_ / "stdout.txt", err = dir_ / "stderr.txt";
    const std::string cmd = "env " + env + " '" + std::string(SXRKIT_CLI_PATH) + "' " + args +
                            " >'" + out.string() + "' 2>'" + err.string() + "'";
    const int status = std::system(cmd.c_str());
    Result r;
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    r.out = slurp(out);
    r.err = slurp(err);
    return r;
  }

  // Last stderr line must be an error record.
  static json error_record(const Result& r) {
    const auto ls = lines(r.err);
    EXPECT_FALSE(ls.empty());
    const json j = json::parse(ls.back());
    EXPECT_EQ(j.at("schema"), "sxrkit.error/1");
    EXPECT_EQ(j.at("exit_code"), r.code);
    return j;
  }

  std::string fx(const std::string& name) const { return "'" + (kFixtures / name).string() + "'"; }
  std::string tmp(const std::string& name) const { return "'" + (dir_ / name).string() + "'"; }

  fs::path dir_;
};

TEST_F(Cli, PerfectEstimateDecomposesToInfiniteSdr) {
  const Result r = run("decompose -m " + fx("perfect.jsonl") + " -L 64 --out-dir " + tmp("comp"));
  ASSERT_EQ(r.code, 0) << r.err;
  const auto rows = json_lines(r.out);
  ASSERT_EQ(rows.size(), 2u);
  for (const json& row : rows) {
    EXPECT_EQ(row["schema"], "sxrkit.sxr/1");
    EXPECT_EQ(row["sdr"], "+inf");
    EXPECT_EQ(row["sar"], "+inf");
    EXPECT_EQ(row["L"], 64);
  }
  EXPECT_EQ(rows[0]["scenario"], "single-talker");
  EXPECT_EQ(rows[1]["scenario"], "multi-talker");
  for (const char* c : {"target", "interf_err", "noise_err", "artif_err"}) {
    EXPECT_TRUE(fs::exists(dir_ / "comp" / (std::string("multi0000_") + c + ".wav"))) << c;
  }
}

TEST_F(Cli, DecomposeSingleFileFlags) {
  const Result r = run("decompose -L 32 --id x --source " + fx("single0000_source.wav") +
                       " --noise " + fx("single0000_noise.wav") + " --enhanced " +
                       fx("single0000_enhanced.wav"));
  ASSERT_EQ(r.code, 0) << r.err;
  const auto rows = json_lines(r.out);
  ASSERT_EQ(rows.size(), 1u);
  EXPECT_EQ(rows[0]["utterance"], "x");
  EXPECT_LT(rows[0]["reassembly_max_abs"].get<double>(), 1e-9);
}

TEST_F(Cli, MetricsCsvAndSummary) {
  const Result r = run("metrics -m " + fx("dataset.jsonl") + " -L 128 --format csv --summary " +
                       tmp("summary.json"));
  ASSERT_EQ(r.code, 0) << r.err;
  const auto ls = lines(r.out);
  ASSERT_EQ(ls.size(), 3u);
  EXPECT_EQ(ls[0], "schema,utterance,sdr,sir,snr,sar,L,scenario");
  EXPECT_EQ(ls[1].rfind("sxrkit.metrics/1,single0000,", 0), 0u);
  const json s = json::parse(slurp(dir_ / "summary.json"));
  EXPECT_EQ(s["schema"], "sxrkit.sxr-summary/1");
  EXPECT_EQ(s["count"], 2);
  // Single-talker SIR is +inf by construction and must not enter the mean.
  EXPECT_EQ(s["sir"]["+inf"], 1);
  EXPECT_EQ(s["sir"]["finite"], 1);
}

TEST_F(Cli, OaSweepHasElevenRowsPerUtterance) {
  const Result r = run("oa-sweep -m " + fx("dataset.jsonl") + " -L 64 --write-signals " +
                       tmp("oa"));
  ASSERT_EQ(r.code, 0) << r.err;
  const auto rows = json_lines(r.out);
  ASSERT_EQ(rows.size(), 22u);
  for (std::size_t k = 0; k < 11; ++k) {
    EXPECT_NEAR(rows[k]["weight"].get<double>(), 0.1 * static_cast<double>(k), 1e-12);
    EXPECT_EQ(rows[k]["utterance"], "single0000");
  }
  EXPECT_EQ(rows[0]["sar_improvement"], 0.0);
  // The Wiener output correlates positively with the mixture, so a small
  // observation weight must raise SAR.
  EXPECT_EQ(rows[1]["condition_satisfied"], true);
  EXPECT_GT(rows[1]["sar_improvement"].get<double>(), 0.0);
  EXPECT_EQ(json_lines(slurp(dir_ / "oa" / "oa.jsonl")).size(), 22u);

  const Result rep = run("report -m " + tmp("oa/oa.jsonl"));
  ASSERT_EQ(rep.code, 0) << rep.err;
  const auto points = json_lines(rep.out);
  ASSERT_EQ(points.size(), 11u);
  EXPECT_EQ(points[3]["entries"], 2);
}

TEST_F(Cli, OaApplyReportsCondition) {
  const Result r = run("oa-apply -w 0.3 --enhanced " + fx("single0000_enhanced.wav") +
                       " --observed " + fx("single0000_observed.wav") + " --write " +
                       tmp("oa.wav"));
  ASSERT_EQ(r.code, 0) << r.err;
  const json row = json::parse(r.out);
  EXPECT_EQ(row["schema"], "sxrkit.oa-apply/1");
  EXPECT_EQ(row["condition_satisfied"], true);
  const sxrkit::Waveform enh = sxrkit::read_wav(kFixtures / "single0000_enhanced.wav");
  const sxrkit::Waveform obs = sxrkit::read_wav(kFixtures / "single0000_observed.wav");
  const sxrkit::Waveform got = sxrkit::read_wav(dir_ / "oa.wav");
  for (std::size_t t = 0; t < got.size(); ++t) {
    EXPECT_NEAR(got[t], 0.7 * enh[t] + 0.3 * obs[t], 1e-6);
  }
  const std::string pair = " --enhanced " + fx("single0000_enhanced.wav") + " --observed " +
                           fx("single0000_observed.wav");
  EXPECT_EQ(run("oa-apply -w 1.5" + pair + " --write " + tmp("bad.wav")).code, 1);
  // Additive mode has no upper bound on the weight.
  ASSERT_EQ(run("oa-apply --additive -w 1.5" + pair + " --write " + tmp("add.wav")).code, 0);
  const sxrkit::Waveform add = sxrkit::read_wav(dir_ / "add.wav");
  EXPECT_NEAR(add[100], enh[100] + 1.5 * obs[100], 1e-6);
}

TEST_F(Cli, GradCheckPassesOnFixtures) {
  const Result r = run("grad-check -m " + fx("dataset.jsonl") + " --alpha 1,2 -L 1,2 --summary " +
                       tmp("s.json"));
  ASSERT_EQ(r.code, 0) << r.err;
  const json s = json::parse(slurp(dir_ / "s.json"));
  EXPECT_LE(s["max_relative_error"].get<double>(), 1e-5);
  EXPECT_EQ(s["pass"], true);
  EXPECT_EQ(json_lines(r.out).size(), 8u);
}

TEST_F(Cli, GradCheckFailureIsInternalError) {
  const Result r = run("grad-check --count 1 --length 32 --tolerance 1e-15 -o /dev/null");
  EXPECT_EQ(r.code, 3);
  EXPECT_EQ(error_record(r)["kind"], "internal");
}

TEST_F(Cli, LossGridAndGradients) {
  const Result r = run("loss -m " + fx("dataset.jsonl") + " --grad-dir " + tmp("g"));
  ASSERT_EQ(r.code, 0) << r.err;
  const auto rows = json_lines(r.out);
  ASSERT_EQ(rows.size(), 12u);  // 6 alphas x 2 utterances
  EXPECT_EQ(rows[0]["L"], 2);   // single-talker default
  EXPECT_EQ(rows[6]["L"], 1);   // multi-talker default
  for (std::size_t k = 1; k < 6; ++k) {
    // A larger artifact weight can only increase the distortion term.
    EXPECT_GT(rows[k]["value"].get<double>(), rows[k - 1]["value"].get<double>());
  }
  const auto g = sxrkit::read_wav(dir_ / "g" / rows[0]["gradient"].get<std::string>());
  EXPECT_EQ(g.size(), 1024u);
  EXPECT_EQ(run("loss --loss snr --grad-dir x -m " + fx("dataset.jsonl")).code, 1);
}

TEST_F(Cli, LossWarnsAboutManyDelays) {
  const Result r = run("loss -m " + fx("dataset.jsonl") + " --alpha 1.5 -L 16");
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.err.find("L=16"), std::string::npos) << r.err;
}

TEST_F(Cli, WerPoolsOverCorpus) {
  const Result r = run("wer --ref " + fx("ref.txt") + " --hyp " + fx("hyp.txt") + " --summary " +
                       tmp("s.json"));
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(json_lines(r.out).size(), 2u);
  const json s = json::parse(slurp(dir_ / "s.json"));
  // (1 + 2) errors over 6 + 4 words; not the mean of 1/6 and 2/4.
  EXPECT_DOUBLE_EQ(s["wer"].get<double>(), 0.3);
  const Result inline_run = run("wer --ref-text 'a b c' --hyp-text 'a x c d'");
  ASSERT_EQ(inline_run.code, 0);
  const json row = json::parse(inline_run.out);
  EXPECT_EQ(row["sub"], 1);
  EXPECT_EQ(row["ins"], 1);
}

TEST_F(Cli, DsaGridWithRecognizerAndReport) {
  const Result r = run("dsa -m " + fx("dataset.jsonl") +
                       " -L 64 --interf-axis 0,1 --noise-axis 0,1 --artif-axis 1 --out-dir " +
                       tmp("dsa") + " --asr-cmd 'test -f {wav} && echo the cat sat on the mat'");
  ASSERT_EQ(r.code, 0) << r.err;
  const auto entries = json_lines(slurp(dir_ / "dsa" / "dsa.jsonl"));
  // Single-talker collapses the interference axis: 2 + 4 signals.
  ASSERT_EQ(entries.size(), 6u);
  EXPECT_EQ(lines(slurp(dir_ / "dsa" / "dsa.csv")).size(), 7u);
  for (const json& e : entries) {
    EXPECT_TRUE(fs::exists(dir_ / "dsa" / e["path"].get<std::string>()));
    EXPECT_EQ(e["hypothesis"], "the cat sat on the mat");
  }
  const Result rep = run("report -m " + tmp("dsa/dsa.jsonl") + " --ref " + fx("ref.txt") +
                         " --summary " + tmp("s.json"));
  ASSERT_EQ(rep.code, 0) << rep.err;
  const auto points = json_lines(rep.out);
  ASSERT_EQ(points.size(), 4u);
  // Point (0, 0, 1) holds both utterances: 0 errors / 6 + 6 errors / 4.
  EXPECT_EQ(points[0]["entries"], 2);
  EXPECT_DOUBLE_EQ(points[0]["wer"].get<double>(), 0.6);
  const json s = json::parse(slurp(dir_ / "s.json"));
  EXPECT_EQ(s["kind"], "dsa");
  EXPECT_EQ(s["best"]["wer"], 0.6);
}

TEST_F(Cli, DsaRecordsBrokenUtteranceAndContinues) {
  std::ofstream(dir_ / "m.jsonl")
      << slurp(kFixtures / "dataset.jsonl")
      << R"({"schema":"sxrkit.dataset/1","id":"ghost","source":"nope.wav",)"
      << R"("interference":null,"noise":"nope.wav","observed":"nope.wav"})" << '\n';
  // The fixture paths are relative to their own directory.
  fs::copy(kFixtures, dir_, fs::copy_options::recursive | fs::copy_options::skip_existing);
  const Result r = run("dsa -m " + tmp("m.jsonl") +
                       " -L 32 --interf-axis 1 --noise-axis 1 --artif-axis 0,1 --no-metrics "
                       "--out-dir " + tmp("dsa"));
  ASSERT_EQ(r.code, 0) << r.err;
  const auto entries = json_lines(slurp(dir_ / "dsa" / "dsa.jsonl"));
  ASSERT_EQ(entries.size(), 5u);
  EXPECT_EQ(entries.back()["schema"], "sxrkit.dsa-failure/1");
  EXPECT_EQ(entries.back()["utterance"], "ghost");
  EXPECT_FALSE(entries[0].contains("metrics"));
}

TEST_F(Cli, MixIsReproducibleFromSeed) {
  const std::string base = "mix --synthetic 3 --length 800 --snr-range -5 5 --sir-range 0 10 ";
  ASSERT_EQ(run(base + "--seed 9 --out-dir " + tmp("a")).code, 0);
  const Result b = run(base + "--seed 9 --out-dir " + tmp("b"));
  ASSERT_EQ(b.code, 0);
  ASSERT_EQ(run(base + "--seed 10 --out-dir " + tmp("c")).code, 0);
  const auto rows = json_lines(b.out);
  ASSERT_EQ(rows.size(), 3u);
  for (const json& row : rows) {
    EXPECT_GE(row["snr_db"].get<double>(), -5.0);
    EXPECT_LE(row["snr_db"].get<double>(), 5.0);
    EXPECT_GE(row["sir_db"].get<double>(), 0.0);
  }
  const std::string f = "syn0002_observed.wav";
  EXPECT_EQ(slurp(dir_ / "a" / f), slurp(dir_ / "b" / f));
  EXPECT_NE(slurp(dir_ / "a" / f), slurp(dir_ / "c" / f));
  EXPECT_EQ(json_lines(slurp(dir_ / "a" / "dataset.jsonl")).size(), 3u);
}

TEST_F(Cli, MixFromConfigHitsRequestedSnr) {
  std::ofstream(dir_ / "mix.json") << json{
      {"seed", 3},
      {"snr_db", 7.5},
      {"sample_format", "f64"},
      {"utterances",
       {{{"id", "u1"},
         {"source", (kFixtures / "single0000_source.wav").string()},
         {"noise", (kFixtures / "multi0000_noise.wav").string()},
         {"transcript", "hello there"}}}}}.dump();
  const Result r = run("mix --config " + tmp("mix.json") + " --out-dir " + tmp("out"));
  ASSERT_EQ(r.code, 0) << r.err;
  const auto s = sxrkit::read_wav(dir_ / "out" / "u1_source.wav");
  const auto n = sxrkit::read_wav(dir_ / "out" / "u1_noise.wav");
  EXPECT_NEAR(10.0 * std::log10(s.energy() / n.energy()), 7.5, 1e-9);
  const auto recs = json_lines(slurp(dir_ / "out" / "dataset.jsonl"));
  ASSERT_EQ(recs.size(), 1u);
  EXPECT_EQ(recs[0]["transcript"], "hello there");

  // An SIR without an interferer is a usage error.
  const Result bad = run("mix --config " + tmp("mix.json") + " --sir 3 --out-dir " + tmp("o2"));
  EXPECT_EQ(bad.code, 1);
  EXPECT_EQ(error_record(bad)["kind"], "usage");
}

TEST_F(Cli, EnhanceWritesManifestWithEnhanced) {
  const Result r = run("enhance -m " + fx("dataset.jsonl") +
                       " --method specsub --frame-len 256 --hop 64 --profile-frames 4 --out-dir " + tmp("enh"));
  ASSERT_EQ(r.code, 0) << r.err;
  const auto recs = json_lines(slurp(dir_ / "enh" / "dataset.jsonl"));
  ASSERT_EQ(recs.size(), 2u);
  EXPECT_EQ(recs[0]["enhanced"], "single0000_enhanced.wav");
  // Reference paths are rewritten relative to the new manifest.
  EXPECT_TRUE(fs::exists(dir_ / "enh" / recs[0]["source"].get<std::string>()));
  EXPECT_EQ(run("metrics -L 32 -m " + tmp("enh/dataset.jsonl") + " -o /dev/null").code, 0);
}

TEST_F(Cli, ExitCodesAndErrorRecords) {
  Result r = run("");
  EXPECT_EQ(r.code, 1);
  EXPECT_EQ(error_record(r)["kind"], "usage");

  r = run("metrics --no-such-flag");
  EXPECT_EQ(r.code, 1);
  EXPECT_EQ(error_record(r)["kind"], "usage");

  r = run("metrics -m " + tmp("missing.jsonl"));
  EXPECT_EQ(r.code, 2);
  EXPECT_EQ(error_record(r)["kind"], "data");

  std::ofstream(dir_ / "broken.jsonl") << "{not json\n";
  r = run("metrics -m " + tmp("broken.jsonl"));
  EXPECT_EQ(r.code, 2);
  EXPECT_EQ(error_record(r)["kind"], "data");

  // L larger than the signal is a usage problem, not a data problem.
  r = run("metrics -L 4096 -m " + fx("dataset.jsonl"));
  EXPECT_EQ(r.code, 1);

  EXPECT_EQ(run("--help").code, 0);
  EXPECT_EQ(run("dsa --help").code, 0);
}

TEST_F(Cli, WorkerCountFromEnvironment) {
  const std::string args = "--log-level debug metrics -L 32 -m " + fx("dataset.jsonl") +
                           " -o /dev/null";
  Result r = run(args, "SXRKIT_WORKERS=3");
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.err.find("workers: 3"), std::string::npos) << r.err;

  r = run("-j 2 " + args, "SXRKIT_WORKERS=3");
  EXPECT_NE(r.err.find("workers: 2"), std::string::npos) << r.err;

  r = run(args, "SXRKIT_WORKERS=zero");
  EXPECT_EQ(r.code, 1);
  EXPECT_EQ(error_record(r)["kind"], "usage");
}

TEST_F(Cli, ParallelRunsMatchSerialRuns) {
  const std::string args = "oa-sweep -L 64 -m " + fx("dataset.jsonl");
  const Result one = run("-j 1 " + args);
  const Result four = run("-j 4 " + args);
  ASSERT_EQ(one.code, 0);
  EXPECT_EQ(one.out, four.out);
}

}  // namespace
