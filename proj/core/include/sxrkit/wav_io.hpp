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
#include <string_view>

#include "sxrkit/waveform.hpp"

namespace sxrkit {

enum class SampleFormat { kPcm16, kFloat32, kFloat64 };

/// Parses "s16", "f32" or "f64".
SampleFormat parse_sample_format(std::string_view name);

/// Reads a mono RIFF/WAVE file (16-bit PCM, 32- or 64-bit IEEE float,
/// plain or WAVE_FORMAT_EXTENSIBLE). PCM is scaled by 1/32768, so -32768
/// maps to -1.0. Multi-channel files are rejected.
Waveform read_wav(const std::filesystem::path& path);

/// Writes a mono file. PCM output is clipped to [-1, 32767/32768].
/// kFloat64 preserves every double bit-exactly; kFloat32 preserves values
/// that are representable in single precision.
void write_wav(const std::filesystem::path& path, const Waveform& wave,
               SampleFormat format = SampleFormat::kFloat32);

}  // namespace sxrkit
