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

#include "common.hpp"

#include <spdlog/spdlog.h>

#include <charconv>
#include <cstdio>
#include <cstdlib>
#include <iostream>

#include "sxrkit/enhancers.hpp"
#include "sxrkit/error.hpp"
#include "sxrkit/parallel.hpp"
#include "sxrkit/wav_io.hpp"

namespace sxrkit::cli {

std::size_t env_worker_count() {
  const char* env = std::getenv("SXRKIT_WORKERS");
  if (env == nullptr || *env == '\0') return default_worker_count();
  std::size_t v = 0;
  const char* end = env + std::char_traits<char>::length(env);
  const auto res = std::from_chars(env, end, v);
  if (res.ec != std::errc() || res.ptr != end || v == 0) {
    throw UsageError(std::string("SXRKIT_WORKERS must be a positive integer, got '") + env + "'");
  }
  return v;
}

namespace {

std::string csv_cell(const Row& v) {
  if (v.is_null()) return "";
  if (v.is_string()) {
    const auto& s = v.get_ref<const std::string&>();
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string q = "\"";
    for (char c : s) {
      if (c == '"') q += '"';
      q += c;
    }
    return q + "\"";
  }
  if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
  return v.dump();
}

}  // namespace

TableWriter::TableWriter(const std::string& path, TableFormat format, std::string schema,
                         std::vector<std::string> columns)
    : format_(format), schema_(std::move(schema)), columns_(std::move(columns)) {
  if (path != "-") {
    file_ = std::make_unique<std::ofstream>(path, std::ios::trunc);
    if (!*file_) throw DataError("cannot open " + path + " for writing");
  }
  if (format_ == TableFormat::kCsv) {
    out() << "schema";
    for (const auto& c : columns_) out() << ',' << c;
    out() << '\n';
  }
}

void TableWriter::write(const Row& row) {
  if (format_ == TableFormat::kJsonl) {
    Row full;
    full["schema"] = schema_;
    for (const auto& [k, v] : row.items()) full[k] = v;
    out() << full.dump() << '\n';
    return;
  }
  out() << schema_;
  for (const auto& c : columns_) out() << ',' << (row.contains(c) ? csv_cell(row[c]) : "");
  out() << '\n';
}

void OutputOptions::add_to(CLI::App* cmd) {
  cmd->add_option("-o,--output", path, "Table destination ('-' for stdout)");
  cmd->add_option("--format", format, "Table format")
      ->check(CLI::IsMember({"jsonl", "csv"}));
  cmd->add_option("--summary", summary, "Also write the summary record to this file");
}

TableFormat OutputOptions::table_format() const {
  return format == "csv" ? TableFormat::kCsv : TableFormat::kJsonl;
}

void OutputOptions::emit_summary(const Row& s) const {
  spdlog::info("summary {}", s.dump());
  if (summary.empty()) return;
  std::ofstream out(summary, std::ios::trunc);
  if (!out) throw DataError("cannot open " + summary + " for writing");
  out << s.dump() << '\n';
}

void InputOptions::add_to(CLI::App* cmd, bool with_enhanced) {
  cmd->add_option("-m,--manifest", manifest, "Dataset manifest (JSON lines)");
  cmd->add_option("--id", id, "Utterance id for single-file input");
  cmd->add_option("--source", source, "Source reference WAV");
  cmd->add_option("--interference", interference, "Interference reference WAV");
  cmd->add_option("--noise", noise, "Noise reference WAV");
  cmd->add_option("--observed", observed, "Observed mixture WAV (default: s + i + n)");
  if (with_enhanced) cmd->add_option("--enhanced", enhanced, "Enhanced signal WAV");
}

std::vector<DatasetRecord> InputOptions::records() const {
  const bool any_file = !source.empty() || !noise.empty() || !interference.empty() ||
                        !observed.empty() || !enhanced.empty();
  if (!manifest.empty()) {
    if (any_file) throw UsageError("give either --manifest or per-file flags, not both");
    auto recs = read_dataset_manifest(manifest);
    if (recs.empty()) throw DataError(manifest + ": manifest has no records");
    return recs;
  }
  if (source.empty() || noise.empty()) {
    throw UsageError("need --manifest, or at least --source and --noise");
  }
  DatasetRecord r;
  r.id = id;
  r.source = source;
  r.noise = noise;
  r.observed = observed;
  if (!interference.empty()) r.interference = interference;
  if (!enhanced.empty()) r.enhanced = enhanced;
  return {r};
}

namespace {

ReferenceSet refs_without_observed(const DatasetRecord& record) {
  Waveform s = read_wav(record.source);
  std::optional<Waveform> i;
  if (record.interference) i = read_wav(*record.interference);
  Waveform n = read_wav(record.noise);
  require_same_shape(s, "source", n, "noise");
  if (i) require_same_shape(s, "source", *i, "interference");
  Waveform y = i ? s + *i + n : s + n;
  return validate_set({std::move(s), std::move(i), std::move(n), std::move(y)});
}

}  // namespace

Utterance load_utterance(const DatasetRecord& record, bool need_enhanced) {
  Utterance u{record,
              record.observed.empty() ? refs_without_observed(record) : load_references(record),
              std::nullopt};
  if (need_enhanced) {
    if (!record.enhanced) {
      throw DataError("utterance '" + record.id + "' has no enhanced signal");
    }
    u.enhanced = read_wav(*record.enhanced);
    require_same_shape(u.refs.source, "source", *u.enhanced, "enhanced");
  }
  return u;
}

void EnhancerOptions::add_to(CLI::App* cmd, std::string default_method) {
  method = std::move(default_method);
  cmd->add_option("--method", method, "Enhancer: input (given signal), wiener (oracle), specsub")
      ->check(CLI::IsMember({"input", "wiener", "specsub"}));
  cmd->add_option("--profile-frames", profile_frames,
                  "specsub: leading frames used as the noise profile");
  cmd->add_option("--floor", floor, "specsub: spectral floor (magnitude fraction)");
  cmd->add_option("--frame-len", frame_len, "STFT frame length");
  cmd->add_option("--hop", hop, "STFT hop");
}

Waveform EnhancerOptions::run(const Utterance& u) const {
  const StftConfig stft{frame_len, hop};
  if (method == "wiener") return oracle_wiener(u.refs, stft);
  if (method == "specsub") return spectral_subtract(u.refs.observed, profile_frames, stft, floor);
  if (!u.enhanced) throw DataError("utterance '" + u.record.id + "' has no enhanced signal");
  return *u.enhanced;
}

std::vector<std::exception_ptr> run_isolated(std::size_t n, std::size_t workers,
                                             const std::function<void(std::size_t)>& fn) {
  std::vector<std::exception_ptr> errors(n);
  parallel_for(n, workers, [&](std::size_t i) {
    try {
      fn(i);
    } catch (...) {
      errors[i] = std::current_exception();
    }
  });
  return errors;
}

void rethrow_failures(const std::vector<std::exception_ptr>& errors,
                      const std::vector<DatasetRecord>& records) {
  std::exception_ptr first;
  std::size_t failed = 0;
  for (std::size_t i = 0; i < errors.size(); ++i) {
    if (!errors[i]) continue;
    ++failed;
    if (!first) first = errors[i];
    try {
      std::rethrow_exception(errors[i]);
    } catch (const std::exception& e) {
      spdlog::error("{}: {}", records[i].id, e.what());
    }
  }
  if (!first) return;
  spdlog::error("{} of {} utterances failed", failed, errors.size());
  std::rethrow_exception(first);
}

Row::value_type db_value(const Decibel& d) {
  if (d.finite()) return d.value();
  return d.to_string();
}

void put_report(Row& row, const SxrReport& r) {
  row["sdr"] = db_value(r.sdr);
  row["sir"] = db_value(r.sir);
  row["snr"] = db_value(r.snr);
  row["sar"] = db_value(r.sar);
  row["L"] = r.num_delays;
  row["scenario"] = r.single_talker ? "single-talker" : "multi-talker";
}

Row summary_row(const char* schema, const SxrSummary& s) {
  Row row;
  row["schema"] = schema;
  row["count"] = s.count;
  auto put = [&](const char* name, const MetricSummary& m) {
    row[name] = {{"mean", db_value(m.mean)},
                 {"finite", m.finite},
                 {"+inf", m.pos_inf},
                 {"-inf", m.neg_inf},
                 {"undefined", m.undefined}};
  };
  put("sdr", s.sdr);
  put("sir", s.sir);
  put("snr", s.snr);
  put("sar", s.sar);
  return row;
}

std::filesystem::path relative_to(const std::filesystem::path& dir,
                                  const std::filesystem::path& p) {
  const auto rel = std::filesystem::absolute(p).lexically_normal().lexically_relative(
      std::filesystem::absolute(dir).lexically_normal());
  return rel.empty() ? std::filesystem::absolute(p) : rel;
}

std::string format_weight(double w, int digits) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.*f", digits, w);
  return buf;
}

}  // namespace sxrkit::cli
