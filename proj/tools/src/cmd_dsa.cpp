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
#include <map>

#include "common.hpp"
#include "sxrkit/dsa.hpp"
#include "sxrkit/error.hpp"
#include "sxrkit/parallel.hpp"
#include "sxrkit/wer.hpp"

namespace sxrkit::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

Row::value_type opt_db(const std::optional<SxrReport>& r, Decibel SxrReport::*field) {
  if (!r) return nullptr;
  return db_value((*r).*field);
}

void write_dsa_csv(const fs::path& path, const DsaManifest& m) {
  TableWriter t(path.string(), TableFormat::kCsv, kDsaSchema,
                {"utterance", "w_interf", "w_noise", "w_artif", "path", "interf_collapsed",
                 "sdr", "sir", "snr", "sar", "hypothesis", "sub", "del", "ins", "ref_len", "wer",
                 "error"});
  for (const DsaEntry& e : m.entries) {
    Row row{{"utterance", e.utterance},
            {"w_interf", e.weights.interf},
            {"w_noise", e.weights.noise},
            {"w_artif", e.weights.artif},
            {"path", e.locator},
            {"interf_collapsed", e.interf_collapsed},
            {"sdr", opt_db(e.metrics, &SxrReport::sdr)},
            {"sir", opt_db(e.metrics, &SxrReport::sir)},
            {"snr", opt_db(e.metrics, &SxrReport::snr)},
            {"sar", opt_db(e.metrics, &SxrReport::sar)}};
    if (e.hypothesis) row["hypothesis"] = e.hypothesis->str();
    if (e.edits) {
      row["sub"] = e.edits->substitutions;
      row["del"] = e.edits->deletions;
      row["ins"] = e.edits->insertions;
      row["ref_len"] = e.edits->ref_length;
      if (const auto w = e.wer()) row["wer"] = *w;
    }
    if (e.error) row["error"] = *e.error;
    t.write(row);
  }
  for (const DsaFailure& f : m.failures) {
    t.write(Row{{"utterance", f.utterance}, {"error", f.reason}});
  }
}

struct DsaCommand {
  InputOptions in;
  EnhancerOptions enh;
  DsaGrid grid;
  std::size_t num_delays = 512;
  std::string out_dir;
  std::string asr_cmd;
  bool no_metrics = false;
  std::string format = "f64";

  void add(CLI::App* cmd) {
    in.add_to(cmd, true);
    enh.add_to(cmd, "input");
    cmd->add_option("-L,--delays", num_delays, "Delayed copies per reference")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--interf-axis", grid.interf, "Interference scalings")->delimiter(',');
    cmd->add_option("--noise-axis", grid.noise, "Noise scalings")->delimiter(',');
    cmd->add_option("--artif-axis", grid.artif, "Artifact scalings")->delimiter(',');
    cmd->add_option("--asr-cmd", asr_cmd,
                    "Recognizer command; {wav} is the signal, {hyp} an optional output file");
    cmd->add_flag("--no-metrics", no_metrics, "Skip SxR of the rescaled components");
    cmd->add_option("--sample-format", format, "Synthesized WAV format")
        ->check(CLI::IsMember({"s16", "f32", "f64"}));
    cmd->add_option("--out-dir", out_dir, "Directory for signals, dsa.jsonl and dsa.csv")
        ->required();
  }

  void run(const GlobalOptions& g) const {
    for (const auto* axis : {&grid.interf, &grid.noise, &grid.artif}) {
      if (axis->empty()) throw UsageError("DSA axes must be nonempty");
      for (double v : *axis) ScalingTriple{v, v, v}.validate();
    }
    const std::vector<DatasetRecord> records = in.records();
    DsaOptions opts;
    opts.signal_dir = out_dir;
    opts.num_delays = num_delays;
    opts.format = parse_sample_format(format);
    opts.compute_metrics = !no_metrics;
    if (!asr_cmd.empty()) opts.asr = make_command_asr(asr_cmd);
    opts.workers = 1;  // parallelism is across utterances here

    std::vector<DsaManifest> parts(records.size());
    parallel_for(records.size(), g.workers, [&](std::size_t k) {
      std::vector<DsaUtterance> one;
      std::optional<Utterance> u;
      try {
        u = load_utterance(records[k], enh.needs_input());
        std::optional<Transcript> ref;
        if (records[k].transcript) ref = Transcript::parse(*records[k].transcript);
        one.push_back(DsaUtterance{records[k].id, u->refs, ref});
      } catch (const std::exception& e) {
        parts[k].failures.push_back({records[k].id, e.what()});
        return;
      }
      const Enhancer enhancer = [&](const ReferenceSet&) { return enh.run(*u); };
      parts[k] = dsa_grid_run(one, enhancer, grid, opts);
    });

    DsaManifest all;
    for (auto& p : parts) {
      for (auto& e : p.entries) all.entries.push_back(std::move(e));
      for (auto& f : p.failures) all.failures.push_back(std::move(f));
    }
    fs::create_directories(out_dir);
    write_dsa_manifest(fs::path(out_dir) / "dsa.jsonl", all);
    write_dsa_csv(fs::path(out_dir) / "dsa.csv", all);
    for (const auto& f : all.failures) spdlog::warn("{}: skipped: {}", f.utterance, f.reason);
    spdlog::info("dsa: {} signals, {} failed utterances", all.entries.size(),
                 all.failures.size());
    if (all.entries.empty()) throw DataError("DSA produced no signals; every utterance failed");
  }
};

// Mean over finite values; a column that is entirely one sentinel shows it.
Row mean_cell(const MetricSummary& m) {
  const std::size_t n = m.finite + m.pos_inf + m.neg_inf + m.undefined;
  if (n == 0) return nullptr;
  if (m.finite > 0) return db_value(m.mean);
  if (m.pos_inf == n) return "+inf";
  if (m.neg_inf == n) return "-inf";
  return "undefined";
}

// One manifest line from either a DSA run or an OA sweep.
struct ReportEntry {
  std::string utterance;
  std::vector<double> key;
  std::string path;
  std::optional<SxrReport> metrics;
  std::optional<Transcript> hypothesis;
  std::optional<Transcript> reference;
  std::optional<EditCounts> edits;
  bool failed = false;
};

struct ReportCommand {
  std::string manifest, hyp_file, ref_file;
  OutputOptions out;

  void add(CLI::App* cmd) {
    cmd->add_option("-m,--manifest", manifest, "dsa.jsonl or oa.jsonl")
        ->required()
        ->check(CLI::ExistingFile);
    cmd->add_option("--hyp", hyp_file, "Hypotheses keyed by signal file stem (Kaldi text)");
    cmd->add_option("--ref", ref_file, "References keyed by utterance id (Kaldi text)");
    out.add_to(cmd);
  }

  void run(const GlobalOptions&) const {
    std::ifstream in(manifest);
    if (!in) throw DataError("cannot open " + manifest);
    std::string kind;
    std::vector<ReportEntry> entries;
    std::size_t failed_utts = 0;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
      ++lineno;
      if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
      json j;
      try {
        j = json::parse(line);
      } catch (const json::exception& e) {
        throw DataError(manifest + ":" + std::to_string(lineno) + ": " + e.what());
      }
      const std::string schema = j.value("schema", "");
      if (schema == kDsaFailureSchema) {
        ++failed_utts;
        continue;
      }
      const std::string this_kind = schema == kDsaSchema       ? "dsa"
                                    : schema == "sxrkit.oa/1" ? "oa"
                                                              : "";
      if (this_kind.empty()) {
        throw DataError(manifest + ":" + std::to_string(lineno) + ": unexpected schema '" +
                        schema + "'");
      }
      if (!kind.empty() && kind != this_kind) throw DataError("manifest mixes DSA and OA records");
      kind = this_kind;
      ReportEntry e;
      e.utterance = j.at("utterance").get<std::string>();
      e.path = j.at("path").get<std::string>();
      if (kind == "dsa") {
        e.key = {j.at("w_interf").get<double>(), j.at("w_noise").get<double>(),
                 j.at("w_artif").get<double>()};
      } else {
        e.key = {j.at("weight").get<double>()};
      }
      if (j.contains("metrics")) e.metrics = parse_sxr_report_json(j["metrics"].dump());
      if (j.contains("hypothesis")) e.hypothesis = Transcript::parse(j["hypothesis"].get<std::string>());
      if (j.contains("transcript")) e.reference = Transcript::parse(j["transcript"].get<std::string>());
      if (j.contains("edits")) {
        const json& ed = j["edits"];
        e.edits = EditCounts{ed.at("sub").get<std::size_t>(), ed.at("del").get<std::size_t>(),
                             ed.at("ins").get<std::size_t>(), ed.at("ref_len").get<std::size_t>()};
      }
      e.failed = j.contains("error");
      entries.push_back(std::move(e));
    }
    if (entries.empty()) throw DataError(manifest + ": no grid-point records");

    std::map<std::string, Transcript> hyps, refs;
    if (!hyp_file.empty()) hyps = read_transcripts(hyp_file);
    if (!ref_file.empty()) refs = read_transcripts(ref_file);
    for (ReportEntry& e : entries) {
      if (!hyp_file.empty()) {
        const auto it = hyps.find(fs::path(e.path).stem().string());
        if (it != hyps.end()) {
          e.hypothesis = it->second;
          e.failed = false;
        }
      }
      if (const auto it = refs.find(e.utterance); it != refs.end()) e.reference = it->second;
      if (e.hypothesis && e.reference && !e.reference->empty()) {
        e.edits = align(*e.reference, *e.hypothesis);
      }
    }

    struct Group {
      std::size_t entries = 0, scored = 0, failed = 0;
      EditCounts pooled;
      std::vector<SxrReport> metrics;
    };
    std::map<std::vector<double>, Group> groups;
    for (const ReportEntry& e : entries) {
      Group& grp = groups[e.key];
      ++grp.entries;
      if (e.failed) ++grp.failed;
      if (e.edits && !e.failed) {
        ++grp.scored;
        grp.pooled += *e.edits;
      }
      if (e.metrics) grp.metrics.push_back(*e.metrics);
    }

    const std::vector<std::string> key_names =
        kind == "dsa" ? std::vector<std::string>{"w_interf", "w_noise", "w_artif"}
                      : std::vector<std::string>{"weight"};
    std::vector<std::string> columns = key_names;
    columns.insert(columns.end(), {"entries", "scored", "failed", "errors", "ref_len", "wer",
                                   "sdr_mean", "sir_mean", "snr_mean", "sar_mean"});
    TableWriter table(out.path, out.table_format(), "sxrkit.report/1", columns);
    std::optional<std::pair<std::vector<double>, double>> best;
    for (const auto& [key, grp] : groups) {
      Row row;
      for (std::size_t i = 0; i < key.size(); ++i) row[key_names[i]] = key[i];
      row["entries"] = grp.entries;
      row["scored"] = grp.scored;
      row["failed"] = grp.failed;
      row["errors"] = grp.pooled.errors();
      row["ref_len"] = grp.pooled.ref_length;
      if (grp.pooled.ref_length > 0) {
        const double w = grp.pooled.rate();
        row["wer"] = w;
        if (!best || w < best->second) best = {key, w};
      } else {
        row["wer"] = nullptr;
      }
      const SxrSummary s = summarize(grp.metrics);
      row["sdr_mean"] = mean_cell(s.sdr);
      row["sir_mean"] = mean_cell(s.sir);
      row["snr_mean"] = mean_cell(s.snr);
      row["sar_mean"] = mean_cell(s.sar);
      table.write(row);
    }

    Row summary{{"schema", "sxrkit.report-summary/1"},
                {"kind", kind},
                {"points", groups.size()},
                {"failed_utterances", failed_utts}};
    if (best) {
      Row b;
      for (std::size_t i = 0; i < best->first.size(); ++i) b[key_names[i]] = best->first[i];
      b["wer"] = best->second;
      summary["best"] = b;
    } else {
      summary["best"] = nullptr;
      spdlog::warn("no grid point has scored transcripts; WER columns are empty");
    }
    out.emit_summary(summary);
  }
};

}  // namespace

void register_dsa(CLI::App& app, Dispatch& d) {
  auto* cmd = app.add_subcommand("dsa", "Rescale error components over a grid and resynthesize");
  auto c = std::make_shared<DsaCommand>();
  c->add(cmd);
  cmd->callback([c, &d] { d.action = [c, &d] { c->run(d.global); }; });
}

void register_report(CLI::App& app, Dispatch& d) {
  auto* cmd = app.add_subcommand("report", "Pool WER and SxR per grid point of a DSA/OA run");
  auto c = std::make_shared<ReportCommand>();
  c->add(cmd);
  cmd->callback([c, &d] { d.action = [c, &d] { c->run(d.global); }; });
}

}  // namespace sxrkit::cli
