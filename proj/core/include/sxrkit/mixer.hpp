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

#include <cstdint>
#include <optional>
#include <random>

#include "sxrkit/waveform.hpp"

namespace sxrkit {

struct ImpulseResponses {
  std::optional<Waveform> source;
  std::optional<Waveform> interference;
  std::optional<Waveform> noise;
};

/// Mixing targets measured over whole-utterance energies:
/// SNR = 10 log10(|s|^2 / |n|^2), SIR = 10 log10(|s|^2 / |i|^2).
/// +inf silences the corresponding signal.
struct MixSpec {
  double target_snr_db = 0.0;
  std::optional<double> target_sir_db;  // absent: single-talker
  std::uint64_t seed = 0;
  ImpulseResponses rirs;
};

/// Builds a reference set with observed = s + i + n exactly.
///
/// Impulse responses (if given) are applied first, truncated to the source
/// length. Noise must be at least as long as the source and is cropped at a
/// seed-determined offset; longer interference is cropped the same way and
/// shorter interference is zero-padded at the tail.
ReferenceSet mix(const Waveform& source, const std::optional<Waveform>& interference,
                 const Waveform& noise, const MixSpec& spec);

/// Uniform-in-dB draw from [lo, hi].
double sample_level_db(double lo, double hi, std::mt19937_64& rng);

/// Linear convolution of x with h, keeping the first x.size() samples.
Waveform convolve_truncated(const Waveform& x, const Waveform& h);

}  // namespace sxrkit
