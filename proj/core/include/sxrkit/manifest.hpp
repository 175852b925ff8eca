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

#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "sxrkit/dsa.hpp"
#include "sxrkit/metrics.hpp"
#include "sxrkit/waveform.hpp"

namespace sxrkit {

inline constexpr const char* kDatasetSchema = "sxrkit.dataset/1";
inline constexpr const char* kDsaSchema = "sxrkit.dsa/1";
inline constexpr const char* kDsaFailureSchema = "sxrkit.dsa-failure/1";

/// One utterance of a dataset manifest (JSON lines). Relative paths are
/// resolved against the manifest's directory when read.
struct DatasetRecord {
  std::string id;
  std::filesystem::path source;
  std::optional<std::filesystem::path> interference;
  std::filesystem::path noise;
  std::filesystem::path observed;
  std::optional<std::filesystem::path> enhanced;
  std::optional<std::string> transcript;
};

std::vector<DatasetRecord> read_dataset_manifest(const std::filesystem::path& path);
void write_dataset_manifest(const std::filesystem::path& path,
                            std::span<const DatasetRecord> records);

/// Reads the record's signals and validates them as a set.
ReferenceSet load_references(const DatasetRecord& record);

/// Serialized report: finite dB values are JSON numbers, sentinels are the
/// strings "+inf", "-inf" and "undefined".
std::string sxr_report_json(const SxrReport& report);
SxrReport parse_sxr_report_json(const std::string& text);

void write_dsa_manifest(const std::filesystem::path& path, const DsaManifest& manifest);
DsaManifest read_dsa_manifest(const std::filesystem::path& path);

}  // namespace sxrkit
