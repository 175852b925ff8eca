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

#include "sxrkit/synth.hpp"

#include <cmath>
#include <numbers>
#include <vector>

#include "sxrkit/mixer.hpp"

namespace sxrkit {

Waveform synth_speech_like(std::size_t length, int sample_rate, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  std::normal_distribution<double> breath(0.0, 1.0);
  const double fs = static_cast<double>(sample_rate);
  const double f0_start = 90.0 + 150.0 * uni(rng);
  const double f0_end = f0_start * (0.8 + 0.4 * uni(rng));
  const double syllable_hz = 3.0 + 3.0 * uni(rng);
  const double env_phase = 2.0 * std::numbers::pi * uni(rng);
  const int harmonics = 12;
  std::vector<double> phase0(harmonics);
  for (double& p : phase0) p = 2.0 * std::numbers::pi * uni(rng);

  std::vector<double> out(length);
  double phase = 0.0;
  for (std::size_t t = 0; t < length; ++t) {
    const double frac = length > 1 ? static_cast<double>(t) / static_cast<double>(length - 1) : 0.0;
    const double f0 = f0_start + (f0_end - f0_start) * frac;
    phase += 2.0 * std::numbers::pi * f0 / fs;
    double v = 0.0;
    for (int k = 1; k <= harmonics; ++k) {
      if (k * f0 >= 0.45 * fs) break;
      v += std::sin(k * phase + phase0[k - 1]) / k;
    }
    const double env = 0.55 + 0.45 * std::sin(2.0 * std::numbers::pi * syllable_hz *
                                                  static_cast<double>(t) / fs + env_phase);
    out[t] = 0.1 * env * (v + 0.05 * breath(rng));
  }
  return Waveform(std::move(out), sample_rate);
}

Waveform synth_noise(std::size_t length, int sample_rate, std::mt19937_64& rng, double pole) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::vector<double> out(length);
  double state = 0.0;
  for (double& v : out) {
    state = pole * state + gauss(rng);
    v = 0.05 * state;
  }
  return Waveform(std::move(out), sample_rate);
}

ReferenceSet synth_mixture(std::size_t length, int sample_rate, double snr_db,
                           std::optional<double> sir_db, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const Waveform source = synth_speech_like(length, sample_rate, rng);
  std::optional<Waveform> interference;
  if (sir_db) interference = synth_speech_like(length, sample_rate, rng);
  const double pole = std::uniform_real_distribution<double>(0.0, 0.9)(rng);
  const Waveform noise = synth_noise(length, sample_rate, rng, pole);
  MixSpec spec;
  spec.target_snr_db = snr_db;
  spec.target_sir_db = sir_db;
  spec.seed = seed;
  return mix(source, interference, noise, spec);
}

}  // namespace sxrkit
