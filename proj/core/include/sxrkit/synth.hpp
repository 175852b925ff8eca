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

#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>

#include "sxrkit/waveform.hpp"

namespace sxrkit {

/// Voiced-speech stand-in: a harmonic series with a gliding fundamental,
/// a 1/k spectral tilt, a little breath noise and a syllable-rate envelope.
Waveform synth_speech_like(std::size_t length, int sample_rate, std::mt19937_64& rng);

/// White Gaussian noise passed through a one-pole low-pass (0 <= pole < 1).
Waveform synth_noise(std::size_t length, int sample_rate, std::mt19937_64& rng,
                     double pole = 0.0);

/// Synthetic utterance mixed at the given levels; deterministic in seed.
ReferenceSet synth_mixture(std::size_t length, int sample_rate, double snr_db,
                           std::optional<double> sir_db, std::uint64_t seed);

}  // namespace sxrkit
