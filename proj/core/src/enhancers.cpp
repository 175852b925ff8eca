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

#include "sxrkit/enhancers.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "sxrkit/error.hpp"

namespace sxrkit {

Waveform oracle_wiener(const ReferenceSet& refs_in, const StftConfig& config) {
  const ReferenceSet refs = validate_set(refs_in);
  const Stft stft(config);
  const Spectrogram s = stft.analyze(refs.source.samples());
  const Spectrogram n = stft.analyze(refs.noise.samples());
  Spectrogram y = stft.analyze(refs.observed.samples());
  std::optional<Spectrogram> i;
  if (refs.interference) i = stft.analyze(refs.interference->samples());

  for (std::size_t k = 0; k < y.data.size(); ++k) {
    const double ps = std::norm(s.data[k]);
    const double pi = i ? std::norm(i->data[k]) : 0.0;
    const double total = ps + pi + std::norm(n.data[k]);
    const double mask = total > 0.0 ? ps / total : 1.0;
    y.data[k] *= mask;
  }
  return Waveform::checked(stft.synthesize(y, refs.length()), refs.sample_rate(),
                           "oracle Wiener output");
}

Waveform spectral_subtract(const Waveform& observed, std::size_t noise_profile_frames,
                           const StftConfig& config, double floor) {
  if (!(floor >= 0.0 && floor <= 1.0)) throw UsageError("spectral floor must lie in [0, 1]");
  if (noise_profile_frames == 0) throw UsageError("noise profile needs at least one frame");
  const Stft stft(config);
  const std::size_t N = config.frame_len, H = config.hop;
  // Frames fully inside the signal start at padded index >= pad.
  const std::size_t first = (stft.pad() + H - 1) / H;
  const std::size_t needed = (first + noise_profile_frames - 1) * H + N - stft.pad();
  if (observed.size() < needed) {
    throw DataError("noise profile of " + std::to_string(noise_profile_frames) +
                    " frames needs " + std::to_string(needed) + " samples, signal has " +
                    std::to_string(observed.size()));
  }
  Spectrogram y = stft.analyze(observed.samples());
  std::vector<double> noise_mag(y.bins, 0.0);
  for (std::size_t f = first; f < first + noise_profile_frames; ++f) {
    for (std::size_t k = 0; k < y.bins; ++k) noise_mag[k] += std::abs(y.at(f, k));
  }
  for (double& v : noise_mag) v /= static_cast<double>(noise_profile_frames);

  for (std::size_t f = 0; f < y.frames; ++f) {
    for (std::size_t k = 0; k < y.bins; ++k) {
      const double mag = std::abs(y.at(f, k));
      if (mag == 0.0) continue;
      const double kept = std::max(mag - noise_mag[k], floor * mag);
      y.at(f, k) *= kept / mag;
    }
  }
  return Waveform::checked(stft.synthesize(y, observed.size()), observed.sample_rate(),
                           "spectral subtraction output");
}

}  // namespace sxrkit
