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

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>

#include "common.hpp"
#include "sxrkit/decomposition.hpp"
#include "sxrkit/error.hpp"
#include "sxrkit/oa.hpp"
#include "sxrkit/wav_io.hpp"

namespace sxrkit::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

const std::vector<std::string> kSxrColumns = {"utterance", "sdr", "sir", "snr",
                                              "sar",       "L",   "scenario"};

struct DecomposeCommand {
  InputOptions in;
  OutputOptions out;
  std::size_t num_delays = 512;
  std::string component_dir;
  std::string format = "f64";
  bool summary_only = false;

  void add(CLI::App* cmd, bool write_components) {
    in.add_to(cmd, true);
    out.add_to(cmd);
    cmd->add_option("-L,--delays", num_delays, "Delayed copies per reference")
        ->check(CLI::PositiveNumber);
    if (write_components) {
      cmd->add_option("--out-dir", component_dir, "Write the four component WAVs here");
      cmd->add_option("--sample-format", format, "Component WAV format")
          ->check(CLI::IsMember({"s16", "f32", "f64"}));
    }
  }

  void run(const GlobalOptions& g, const char* schema, bool with_summary) const {
    const std::vector<DatasetRecord> records = in.records();
    const SampleFormat fmt = parse_sample_format(format);
    if (!component_dir.empty()) fs::create_directories(component_dir);
    std::vector<SxrReport> reports(records.size());
    std::vector<double> reassembly(records.size(), 0.0);
    const auto errors = run_isolated(records.size(), g.workers, [&](std::size_t k) {
      const Utterance u = load_utterance(records[k], true);
      const Decomposition dec = Decomposer(u.refs, num_delays).decompose(*u.enhanced);
      reports[k] = sxr(dec);
      const Waveform back = dec.reassemble();
      for (std::size_t t = 0; t < back.size(); ++t) {
        reassembly[k] = std::max(reassembly[k], std::abs(back[t] - (*u.enhanced)[t]));
      }
      if (component_dir.empty()) return;
      const fs::path dir = component_dir;
      const std::string& id = records[k].id;
      write_wav(dir / (id + "_target.wav"), dec.target, fmt);
      write_wav(dir / (id + "_interf_err.wav"), dec.interf_err, fmt);
      write_wav(dir / (id + "_noise_err.wav"), dec.noise_err, fmt);
      write_wav(dir / (id + "_artif_err.wav"), dec.artif_err, fmt);
    });

    std::vector<std::string> columns = kSxrColumns;
    if (!with_summary) columns.push_back("reassembly_max_abs");
    TableWriter table(out.path, out.table_format(), schema, columns);
    std::vector<SxrReport> ok;
    for (std::size_t k = 0; k < records.size(); ++k) {
      if (errors[k]) continue;
      Row row{{"utterance", records[k].id}};
      put_report(row, reports[k]);
      if (!with_summary) row["reassembly_max_abs"] = reassembly[k];
      table.write(row);
      ok.push_back(reports[k]);
    }
    if (with_summary && !ok.empty()) {
      out.emit_summary(summary_row("sxrkit.sxr-summary/1", summarize(ok)));
    }
    rethrow_failures(errors, records);
  }
};

struct OaSweepCommand {
  InputOptions in;
  OutputOptions out;
  EnhancerOptions enh;
  std::size_t num_delays = 512;
  std::vector<double> weights = default_oa_weights();
  std::string signal_dir;
  std::string format = "f64";

  void add(CLI::App* cmd) {
    in.add_to(cmd, true);
    out.add_to(cmd);
    enh.add_to(cmd, "input");
    cmd->add_option("-L,--delays", num_delays, "Delayed copies per reference")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--weights", weights, "Observation weights (comma separated)")
        ->delimiter(',');
    cmd->add_option("--write-signals", signal_dir,
                    "Write OA signals and an oa.jsonl manifest to this directory");
    cmd->add_option("--sample-format", format, "OA signal WAV format")
        ->check(CLI::IsMember({"s16", "f32", "f64"}));
  }

  void run(const GlobalOptions& g) const {
    OaConfig{0.0, weights}.validate();
    const std::vector<DatasetRecord> records = in.records();
    const SampleFormat fmt = parse_sample_format(format);
    if (!signal_dir.empty()) fs::create_directories(signal_dir);

    struct Result {
      std::vector<OaSweepPoint> points;
      std::vector<Decibel> sari;
      OaCondition condition;
      std::vector<std::string> paths;
    };
    std::vector<Result> results(records.size());
    const auto errors = run_isolated(records.size(), g.workers, [&](std::size_t k) {
      const Utterance u = load_utterance(records[k], enh.needs_input());
      const Waveform enhanced = enh.run(u);
      const Decomposer dec(u.refs, num_delays);
      Result& r = results[k];
      r.points = oa_sweep(enhanced, u.refs.observed, dec, weights);
      r.condition = oa_condition(enhanced, u.refs.observed);
      // Difference to the unmodified signal; defined at the endpoints too,
      // unlike the closed form.
      const Decibel base = sxr(dec.decompose(enhanced)).sar;
      for (const OaSweepPoint& p : r.points) r.sari.push_back(p.report.sar - base);
      for (double w : weights) {
        if (signal_dir.empty()) break;
        const std::string name = records[k].id + "_oa" + format_weight(w) + ".wav";
        write_wav(fs::path(signal_dir) / name, oa_interpolate(enhanced, u.refs.observed, w), fmt);
        r.paths.push_back(name);
      }
    });

    std::vector<std::string> columns = {"utterance", "weight"};
    columns.insert(columns.end(), kSxrColumns.begin() + 1, kSxrColumns.end());
    columns.insert(columns.end(), {"sar_improvement", "condition_satisfied"});
    TableWriter table(out.path, out.table_format(), "sxrkit.oa-sweep/1", columns);
    std::ofstream oa_manifest;
    if (!signal_dir.empty()) {
      oa_manifest.open(fs::path(signal_dir) / "oa.jsonl", std::ios::trunc);
      if (!oa_manifest) throw DataError("cannot write " + signal_dir + "/oa.jsonl");
    }
    for (std::size_t k = 0; k < records.size(); ++k) {
      if (errors[k]) continue;
      const Result& r = results[k];
      if (!r.condition.satisfied) {
        spdlog::warn("{}: <enhanced, observed> = {} is not positive; OA is not guaranteed "
                     "to raise SAR",
                     records[k].id, r.condition.inner_product);
      }
      for (std::size_t p = 0; p < r.points.size(); ++p) {
        Row row{{"utterance", records[k].id}, {"weight", r.points[p].weight}};
        put_report(row, r.points[p].report);
        row["sar_improvement"] = db_value(r.sari[p]);
        row["condition_satisfied"] = r.condition.satisfied;
        table.write(row);
        if (!oa_manifest.is_open()) continue;
        Row rec{{"schema", "sxrkit.oa/1"},
                {"utterance", records[k].id},
                {"weight", r.points[p].weight},
                {"path", r.paths[p]},
                {"metrics", json::parse(sxr_report_json(r.points[p].report))}};
        if (records[k].transcript) rec["transcript"] = *records[k].transcript;
        oa_manifest << rec.dump() << '\n';
      }
    }
    rethrow_failures(errors, records);
  }
};

struct OaApplyCommand {
  std::string manifest, enhanced, observed, id = "utt";
  std::string output_wav, out_dir;
  double weight = 0.0;
  bool additive = false;
  std::string format = "f32";
  OutputOptions out;

  void add(CLI::App* cmd) {
    cmd->add_option("-m,--manifest", manifest, "Dataset manifest with enhanced signals");
    cmd->add_option("--enhanced", enhanced, "Enhanced WAV");
    cmd->add_option("--observed", observed, "Observed mixture WAV");
    cmd->add_option("--id", id, "Utterance id for single-file input");
    cmd->add_option("-w,--weight", weight, "Observation weight, in [0, 1] unless --additive")
        ->required();
    cmd->add_flag("--additive", additive, "Use enh + w*obs instead of interpolation");
    cmd->add_option("--write", output_wav, "Output WAV (single-file input)");
    cmd->add_option("--out-dir", out_dir, "Output directory (manifest input)");
    cmd->add_option("--sample-format", format, "WAV sample format")
        ->check(CLI::IsMember({"s16", "f32", "f64"}));
    out.add_to(cmd);
  }

  void run(const GlobalOptions& g) const {
    // Additive mode takes any w >= 0; oa_additive checks that itself.
    if (!additive) OaConfig{weight, {weight}}.validate();
    const SampleFormat fmt = parse_sample_format(format);
    std::vector<DatasetRecord> records;
    std::vector<fs::path> targets;
    if (!manifest.empty()) {
      if (!enhanced.empty() || !observed.empty() || !output_wav.empty()) {
        throw UsageError("give either --manifest with --out-dir or single-file flags");
      }
      if (out_dir.empty()) throw UsageError("--manifest needs --out-dir");
      records = read_dataset_manifest(manifest);
      fs::create_directories(out_dir);
      for (const auto& r : records) {
        targets.push_back(fs::path(out_dir) / (r.id + "_oa" + format_weight(weight) + ".wav"));
      }
    } else {
      if (enhanced.empty() || observed.empty() || output_wav.empty()) {
        throw UsageError("oa-apply needs --enhanced, --observed and --write");
      }
      DatasetRecord r;
      r.id = id;
      r.observed = observed;
      r.enhanced = enhanced;
      records.push_back(r);
      targets.emplace_back(output_wav);
    }

    std::vector<OaCondition> conditions(records.size());
    const auto errors = run_isolated(records.size(), g.workers, [&](std::size_t k) {
      if (!records[k].enhanced) throw DataError("no enhanced signal for " + records[k].id);
      const Waveform enh = read_wav(*records[k].enhanced);
      const Waveform obs = read_wav(records[k].observed);
      require_same_shape(obs, "observed", enh, "enhanced");
      conditions[k] = oa_condition(enh, obs);
      write_wav(targets[k],
                additive ? oa_additive(enh, obs, weight) : oa_interpolate(enh, obs, weight), fmt);
    });
    TableWriter table(out.path, out.table_format(), "sxrkit.oa-apply/1",
                      {"utterance", "weight", "mode", "inner_product", "condition_satisfied",
                       "path"});
    for (std::size_t k = 0; k < records.size(); ++k) {
      if (errors[k]) continue;
      if (!conditions[k].satisfied) {
        spdlog::warn("{}: <enhanced, observed> <= 0, OA may lower SAR", records[k].id);
      }
      table.write(Row{{"utterance", records[k].id},
                      {"weight", weight},
                      {"mode", additive ? "additive" : "interpolate"},
                      {"inner_product", conditions[k].inner_product},
                      {"condition_satisfied", conditions[k].satisfied},
                      {"path", targets[k].string()}});
    }
    rethrow_failures(errors, records);
  }
};

}  // namespace

void register_decompose(CLI::App& app, Dispatch& d) {
  auto* cmd = app.add_subcommand("decompose", "Split enhanced signals into SxR components");
  auto c = std::make_shared<DecomposeCommand>();
  c->add(cmd, true);
  cmd->callback([c, &d] { d.action = [c, &d] { c->run(d.global, "sxrkit.sxr/1", false); }; });
}

void register_metrics(CLI::App& app, Dispatch& d) {
  auto* cmd = app.add_subcommand("metrics", "Per-utterance SDR/SIR/SNR/SAR with a summary");
  auto c = std::make_shared<DecomposeCommand>();
  c->add(cmd, false);
  cmd->callback([c, &d] { d.action = [c, &d] { c->run(d.global, "sxrkit.metrics/1", true); }; });
}

void register_oa_sweep(CLI::App& app, Dispatch& d) {
  auto* cmd = app.add_subcommand("oa-sweep", "SxR over a grid of observation weights");
  auto c = std::make_shared<OaSweepCommand>();
  c->add(cmd);
  cmd->callback([c, &d] { d.action = [c, &d] { c->run(d.global); }; });
}

void register_oa_apply(CLI::App& app, Dispatch& d) {
  auto* cmd = app.add_subcommand("oa-apply", "Add the observation back at a fixed weight");
  auto c = std::make_shared<OaApplyCommand>();
  c->add(cmd);
  cmd->callback([c, &d] { d.action = [c, &d] { c->run(d.global); }; });
}

}  // namespace sxrkit::cli
