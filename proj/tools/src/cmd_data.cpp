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

#include <spdlog/spdlog.h>

#include <filesystem>
#include <fstream>
#include <random>

#include "common.hpp"
#include "sxrkit/error.hpp"
#include "sxrkit/mixer.hpp"
#include "sxrkit/synth.hpp"
#include "sxrkit/wav_io.hpp"

namespace sxrkit::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

// Either a fixed level or a uniform range in dB.
struct Level {
  std::optional<double> fixed;
  std::optional<std::pair<double, double>> range;

  bool set() const { return fixed || range; }
  double draw(std::mt19937_64& rng) const {
    return fixed ? *fixed : sample_level_db(range->first, range->second, rng);
  }
};

struct MixItem {
  std::string id;
  fs::path source, noise;
  std::optional<fs::path> interference, rir_source, rir_interference, rir_noise;
  std::optional<std::string> transcript;
};

struct MixPlan {
  std::vector<MixItem> items;
  std::size_t synthetic = 0;
  std::size_t length = 16000;
  int sample_rate = 16000;
  Level snr, sir;
  std::uint64_t seed = 0;
  std::string sample_format = "f32";
};

Level level_from(const json& j, const char* fixed_key, const char* range_key) {
  Level l;
  if (j.contains(fixed_key)) l.fixed = j[fixed_key].get<double>();
  if (j.contains(range_key)) {
    const auto r = j[range_key].get<std::vector<double>>();
    if (r.size() != 2) throw UsageError(std::string(range_key) + " needs [lo, hi]");
    l.range = {r[0], r[1]};
  }
  if (l.fixed && l.range) {
    throw UsageError(std::string("config sets both ") + fixed_key + " and " + range_key);
  }
  return l;
}

MixPlan plan_from_config(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open config " + path.string());
  const json j = json::parse(in);
  const fs::path base = path.parent_path();
  auto resolve = [&](const json& v) {
    fs::path p = v.get<std::string>();
    return p.is_absolute() ? p : base / p;
  };

  MixPlan plan;
  plan.seed = j.value("seed", std::uint64_t{0});
  plan.sample_format = j.value("sample_format", plan.sample_format);
  plan.snr = level_from(j, "snr_db", "snr_range_db");
  plan.sir = level_from(j, "sir_db", "sir_range_db");
  if (j.contains("synthetic")) {
    const json& s = j["synthetic"];
    plan.synthetic = s.at("count").get<std::size_t>();
    plan.length = s.value("length", plan.length);
    plan.sample_rate = s.value("sample_rate", plan.sample_rate);
  }
  for (const json& u : j.value("utterances", json::array())) {
    MixItem item;
    item.id = u.at("id").get<std::string>();
    item.source = resolve(u.at("source"));
    item.noise = resolve(u.at("noise"));
    if (u.contains("interference")) item.interference = resolve(u["interference"]);
    if (u.contains("rir_source")) item.rir_source = resolve(u["rir_source"]);
    if (u.contains("rir_interference")) item.rir_interference = resolve(u["rir_interference"]);
    if (u.contains("rir_noise")) item.rir_noise = resolve(u["rir_noise"]);
    if (u.contains("transcript")) item.transcript = u["transcript"].get<std::string>();
    plan.items.push_back(std::move(item));
  }
  return plan;
}

std::optional<Waveform> maybe_read(const std::optional<fs::path>& p) {
  if (!p) return std::nullopt;
  return read_wav(*p);
}

struct MixCommand {
  CLI::App* cmd = nullptr;
  std::string config, out_dir, interference, transcript, rir_s, rir_i, rir_n;
  std::string prefix = "syn";
  MixItem item{"utt", {}, {}, {}, {}, {}, {}, {}};
  MixPlan flags;
  std::optional<double> snr, sir;
  std::vector<double> snr_range, sir_range;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> synthetic;
  std::optional<std::string> format;
  OutputOptions output;

  void add(CLI::App* c) {
    cmd = c;
    cmd->add_option("--config", config, "JSON mixing config")->check(CLI::ExistingFile);
    cmd->add_option("--source", item.source, "Source WAV (single utterance)");
    cmd->add_option("--interference", interference, "Interfering talker WAV");
    cmd->add_option("--noise", item.noise, "Noise WAV");
    cmd->add_option("--id", item.id, "Utterance id");
    cmd->add_option("--transcript", transcript, "Reference transcript to carry along");
    cmd->add_option("--rir-source", rir_s, "Impulse response for the source");
    cmd->add_option("--rir-interference", rir_i, "Impulse response for the interferer");
    cmd->add_option("--rir-noise", rir_n, "Impulse response for the noise");
    auto* o_snr = cmd->add_option("--snr", snr, "Target SNR in dB");
    cmd->add_option("--snr-range", snr_range, "Uniform SNR range lo hi (dB)")
        ->expected(2)
        ->excludes(o_snr);
    auto* o_sir = cmd->add_option("--sir", sir, "Target SIR in dB (multi-talker)");
    cmd->add_option("--sir-range", sir_range, "Uniform SIR range lo hi (dB)")
        ->expected(2)
        ->excludes(o_sir);
    cmd->add_option("--synthetic", synthetic, "Generate this many synthetic utterances");
    cmd->add_option("--id-prefix", prefix, "Id prefix for synthetic utterances");
    cmd->add_option("--length", flags.length, "Synthetic length in samples");
    cmd->add_option("--sample-rate", flags.sample_rate, "Synthetic sample rate");
    cmd->add_option("--seed", seed, "Seed for level draws and synthesis");
    cmd->add_option("--sample-format", format, "WAV sample format")
        ->check(CLI::IsMember({"s16", "f32", "f64"}));
    cmd->add_option("--out-dir", out_dir, "Output directory")->required();
    output.add_to(cmd);
  }

  // Config file first, explicit flags on top.
  MixPlan plan() const {
    MixPlan p = config.empty() ? flags : plan_from_config(config);
    if (cmd->count("--length")) p.length = flags.length;
    if (cmd->count("--sample-rate")) p.sample_rate = flags.sample_rate;
    if (snr) p.snr = Level{snr, std::nullopt};
    if (!snr_range.empty()) p.snr = Level{std::nullopt, std::pair{snr_range[0], snr_range[1]}};
    if (sir) p.sir = Level{sir, std::nullopt};
    if (!sir_range.empty()) p.sir = Level{std::nullopt, std::pair{sir_range[0], sir_range[1]}};
    if (seed) p.seed = *seed;
    if (synthetic) p.synthetic = *synthetic;
    if (format) p.sample_format = *format;
    if (!item.source.empty() || !item.noise.empty()) {
      if (item.source.empty() || item.noise.empty()) {
        throw UsageError("mix needs both --source and --noise");
      }
      MixItem it = item;
      if (!interference.empty()) it.interference = interference;
      if (!rir_s.empty()) it.rir_source = rir_s;
      if (!rir_i.empty()) it.rir_interference = rir_i;
      if (!rir_n.empty()) it.rir_noise = rir_n;
      if (!transcript.empty()) it.transcript = transcript;
      p.items = {it};
    }
    if (p.items.empty() && p.synthetic == 0) {
      throw UsageError("nothing to mix: give --source/--noise, --synthetic or --config");
    }
    if (!p.snr.set()) throw UsageError("mix needs --snr or --snr-range");
    if (p.snr.range && p.snr.range->first > p.snr.range->second) {
      throw UsageError("--snr-range needs lo <= hi");
    }
    if (p.sir.range && p.sir.range->first > p.sir.range->second) {
      throw UsageError("--sir-range needs lo <= hi");
    }
    return p;
  }

  void run(const GlobalOptions& g) const {
    const MixPlan p = plan();
    const SampleFormat fmt = parse_sample_format(p.sample_format);

    // Levels and per-utterance seeds come from one stream, in order, so a
    // run is reproducible from the top-level seed alone.
    std::mt19937_64 rng(p.seed);
    struct Job {
      std::string id;
      const MixItem* item = nullptr;
      double snr_db = 0.0;
      std::optional<double> sir_db;
      std::uint64_t seed = 0;
    };
    std::vector<Job> jobs;
    auto draw = [&](std::string id, const MixItem* it) {
      Job j{std::move(id), it, p.snr.draw(rng), std::nullopt, 0};
      if (p.sir.set()) j.sir_db = p.sir.draw(rng);
      j.seed = rng();
      jobs.push_back(std::move(j));
    };
    for (const MixItem& it : p.items) {
      if (p.sir.set() != it.interference.has_value()) {
        throw UsageError("utterance '" + it.id +
                         "': an interferer and an SIR must be given together");
      }
      draw(it.id, &it);
    }
    for (std::size_t k = 0; k < p.synthetic; ++k) {
      char num[16];
      std::snprintf(num, sizeof num, "%04zu", k);
      draw(prefix + num, nullptr);
    }

    const fs::path dir = out_dir;
    fs::create_directories(dir);
    std::vector<DatasetRecord> records(jobs.size());
    const auto errors = run_isolated(jobs.size(), g.workers, [&](std::size_t k) {
      const Job& j = jobs[k];
      records[k].id = j.id;
      const ReferenceSet refs = [&] {
        if (j.item == nullptr) {
          return synth_mixture(p.length, p.sample_rate, j.snr_db, j.sir_db, j.seed);
        }
        const MixItem& it = *j.item;
        MixSpec spec{j.snr_db, j.sir_db, j.seed,
                     {maybe_read(it.rir_source), maybe_read(it.rir_interference),
                      maybe_read(it.rir_noise)}};
        return mix(read_wav(it.source), maybe_read(it.interference), read_wav(it.noise), spec);
      }();
      DatasetRecord& r = records[k];
      r.source = j.id + "_source.wav";
      r.noise = j.id + "_noise.wav";
      r.observed = j.id + "_observed.wav";
      write_wav(dir / r.source, refs.source, fmt);
      write_wav(dir / r.noise, refs.noise, fmt);
      write_wav(dir / r.observed, refs.observed, fmt);
      if (refs.interference) {
        r.interference = j.id + "_interference.wav";
        write_wav(dir / *r.interference, *refs.interference, fmt);
      }
      if (j.item) r.transcript = j.item->transcript;
    });

    std::vector<DatasetRecord> ok;
    TableWriter table(output.path, output.table_format(), "sxrkit.mix/1",
                      {"utterance", "snr_db", "sir_db", "seed"});
    for (std::size_t k = 0; k < jobs.size(); ++k) {
      if (errors[k]) continue;
      ok.push_back(records[k]);
      table.write(Row{{"utterance", jobs[k].id},
                      {"snr_db", jobs[k].snr_db},
                      {"sir_db", jobs[k].sir_db ? json(*jobs[k].sir_db) : json(nullptr)},
                      {"seed", jobs[k].seed}});
    }
    write_dataset_manifest(dir / "dataset.jsonl", ok);
    spdlog::info("wrote {} utterances to {}", ok.size(), (dir / "dataset.jsonl").string());
    rethrow_failures(errors, records);
  }
};

struct EnhanceCommand {
  InputOptions in;
  EnhancerOptions enh;
  std::string out_dir;
  std::string format = "f32";

  void add(CLI::App* cmd) {
    in.add_to(cmd, false);
    enh.add_to(cmd, "wiener");
    cmd->add_option("--out-dir", out_dir, "Output directory")->required();
    cmd->add_option("--sample-format", format, "WAV sample format")
        ->check(CLI::IsMember({"s16", "f32", "f64"}));
  }

  void run(const GlobalOptions& g) const {
    if (enh.needs_input()) throw UsageError("enhance needs --method wiener or specsub");
    const SampleFormat fmt = parse_sample_format(format);
    const std::vector<DatasetRecord> records = in.records();
    const fs::path dir = out_dir;
    fs::create_directories(dir);
    std::vector<DatasetRecord> out(records.size());
    const auto errors = run_isolated(records.size(), g.workers, [&](std::size_t k) {
      const Utterance u = load_utterance(records[k], false);
      const fs::path file = dir / (records[k].id + "_enhanced.wav");
      write_wav(file, enh.run(u), fmt);
      DatasetRecord r = records[k];
      r.source = relative_to(dir, r.source);
      r.noise = relative_to(dir, r.noise);
      if (r.interference) r.interference = relative_to(dir, *r.interference);
      if (r.observed.empty()) {
        // Single-file input without --observed: keep the implied mixture.
        r.observed = records[k].id + "_observed.wav";
        write_wav(dir / r.observed, u.refs.observed, fmt);
      } else {
        r.observed = relative_to(dir, r.observed);
      }
      r.enhanced = file.filename();
      out[k] = std::move(r);
    });
    std::vector<DatasetRecord> ok;
    for (std::size_t k = 0; k < out.size(); ++k) {
      if (!errors[k]) ok.push_back(out[k]);
    }
    write_dataset_manifest(dir / "dataset.jsonl", ok);
    spdlog::info("enhanced {} utterances with {}", ok.size(), enh.method);
    rethrow_failures(errors, records);
  }
};

}  // namespace

void register_mix(CLI::App& app, Dispatch& d) {
  auto* cmd = app.add_subcommand("mix", "Build source/interference/noise/observed sets");
  auto c = std::make_shared<MixCommand>();
  c->add(cmd);
  cmd->callback([c, &d] { d.action = [c, &d] { c->run(d.global); }; });
}
void register_enhance(CLI::App& app, Dispatch& d) {
  auto* cmd = app.add_subcommand("enhance", "Run a reference enhancer over a dataset");
  auto c = std::make_shared<EnhanceCommand>();
  c->add(cmd);
  cmd->callback([c, &d] { d.action = [c, &d] { c->run(d.global); }; });
}

}  // namespace sxrkit::cli
