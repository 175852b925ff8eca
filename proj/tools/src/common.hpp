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
#pragma once

#include <CLI11.hpp>
#include <json.hpp>

#include <cstddef>
#include <exception>
#include <filesystem>
#include <fstream>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "sxrkit/manifest.hpp"
#include "sxrkit/metrics.hpp"
#include "sxrkit/waveform.hpp"

namespace sxrkit::cli {

using Row = nlohmann::ordered_json;

struct GlobalOptions {
  std::size_t workers = 1;
  std::string log_level = "info";
};

/// Filled in by the chosen subcommand; main runs it after parsing.
struct Dispatch {
  GlobalOptions global;
  std::function<void()> action;
};

/// Resolves SXRKIT_WORKERS; a set but malformed value is a usage error.
std::size_t env_worker_count();

enum class TableFormat { kJsonl, kCsv };

/// Writes flat records either as JSON lines or as CSV with a fixed header.
/// Every table carries its schema id in the first column / field.
class TableWriter {
 public:
  TableWriter(const std::string& path, TableFormat format, std::string schema,
              std::vector<std::string> columns);
  void write(const Row& row);

 private:
  std::ostream& out() { return file_ ? *file_ : std::cout; }
  std::unique_ptr<std::ofstream> file_;
  TableFormat format_;
  std::string schema_;
  std::vector<std::string> columns_;
};

struct OutputOptions {
  std::string path = "-";
  std::string format = "jsonl";
  std::string summary;
  void add_to(CLI::App* cmd);
  TableFormat table_format() const;
  /// Logs the summary and, if requested, writes it to --summary.
  void emit_summary(const Row& summary) const;
};

/// Shared input flags: a dataset manifest or one utterance given as files.
struct InputOptions {
  std::string manifest;
  std::string id = "utt";
  std::string source, interference, noise, observed, enhanced;
  void add_to(CLI::App* cmd, bool with_enhanced);
  std::vector<DatasetRecord> records() const;
};

struct Utterance {
  DatasetRecord record;
  ReferenceSet refs;
  std::optional<Waveform> enhanced;
};

/// Loads references (and the enhanced signal when asked). A record without
/// an observed path gets observed = s + i + n.
Utterance load_utterance(const DatasetRecord& record, bool need_enhanced);

/// Enhancement used by enhance, dsa and oa-sweep. "input" takes the
/// enhanced signal from the manifest or --enhanced.
struct EnhancerOptions {
  std::string method;
  std::size_t profile_frames = 8;
  double floor = 0.05;
  std::size_t frame_len = 1024;
  std::size_t hop = 256;
  void add_to(CLI::App* cmd, std::string default_method);
  bool needs_input() const { return method == "input"; }
  Waveform run(const Utterance& u) const;
};

/// Runs fn over [0, n) and keeps going past failures; errors[i] holds the
/// exception of item i, if any.
std::vector<std::exception_ptr> run_isolated(std::size_t n, std::size_t workers,
                                             const std::function<void(std::size_t)>& fn);

/// Logs every failure and rethrows the first one (so its exit code wins).
void rethrow_failures(const std::vector<std::exception_ptr>& errors,
                      const std::vector<DatasetRecord>& records);

Row::value_type db_value(const Decibel& d);
void put_report(Row& row, const SxrReport& report);
Row summary_row(const char* schema, const SxrSummary& s);

std::filesystem::path relative_to(const std::filesystem::path& dir,
                                  const std::filesystem::path& p);
std::string format_weight(double w, int digits = 3);

void register_mix(CLI::App& app, Dispatch& d);
void register_enhance(CLI::App& app, Dispatch& d);
void register_decompose(CLI::App& app, Dispatch& d);
void register_metrics(CLI::App& app, Dispatch& d);
void register_dsa(CLI::App& app, Dispatch& d);
void register_oa_sweep(CLI::App& app, Dispatch& d);
void register_oa_apply(CLI::App& app, Dispatch& d);
void register_loss(CLI::App& app, Dispatch& d);
void register_grad_check(CLI::App& app, Dispatch& d);
void register_wer(CLI::App& app, Dispatch& d);
void register_report(CLI::App& app, Dispatch& d);

}  // namespace sxrkit::cli
