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

#include "sxrkit/stft.hpp"

#include <cmath>
#include <numbers>

#include "sxrkit/error.hpp"
#include "sxrkit/fft.hpp"

namespace sxrkit {

void StftConfig::validate() const {
  if (frame_len < 2 || hop == 0 || hop > frame_len) {
    throw UsageError("STFT needs frame_len >= 2 and 0 < hop <= frame_len");
  }
}

Stft::Stft(StftConfig config) : config_(config), window_(config.frame_len) {
  config_.validate();
  const double n = static_cast<double>(config_.frame_len);
  for (std::size_t k = 0; k < window_.size(); ++k) {
    window_[k] = 0.5 - 0.5 * std::cos(2.0 * std::numbers::pi * static_cast<double>(k) / n);
  }
}

std::size_t Stft::num_frames(std::size_t length) const {
  // Last frame starts at or after the last sample's centered position.
  return (length + config_.hop - 2) / config_.hop + 1;
}

Spectrogram Stft::analyze(std::span<const double> x) const {
  const std::size_t N = config_.frame_len, H = config_.hop;
  Spectrogram spec;
  spec.frames = num_frames(x.size());
  spec.bins = N / 2 + 1;
  spec.data.resize(spec.frames * spec.bins);
  RealFft fft(N);
  std::vector<double> frame(N);
  for (std::size_t f = 0; f < spec.frames; ++f) {
    for (std::size_t k = 0; k < N; ++k) {
      // padded index f*H + k corresponds to sample f*H + k - pad
      const std::size_t p = f * H + k;
      const bool inside = p >= pad() && p - pad() < x.size();
      frame[k] = inside ? window_[k] * x[p - pad()] : 0.0;
    }
    const auto bins = fft.forward(frame);
    std::copy(bins.begin(), bins.end(), spec.data.begin() + static_cast<std::ptrdiff_t>(f * spec.bins));
  }
  return spec;
}

std::vector<double> Stft::synthesize(const Spectrogram& spec, std::size_t length) const {
  const std::size_t N = config_.frame_len, H = config_.hop;
  if (spec.bins != N / 2 + 1) throw UsageError("spectrogram bin count does not match STFT");
  const std::size_t padded = (spec.frames == 0 ? 0 : (spec.frames - 1) * H + N);
  std::vector<double> acc(padded, 0.0), norm(padded, 0.0);
  RealFft fft(N);
  const double scale = 1.0 / static_cast<double>(N);
  for (std::size_t f = 0; f < spec.frames; ++f) {
    const std::span<const std::complex<double>> row(spec.data.data() + f * spec.bins, spec.bins);
    const std::vector<double> frame = fft.inverse(row);
    for (std::size_t k = 0; k < N; ++k) {
      acc[f * H + k] += window_[k] * frame[k] * scale;
      norm[f * H + k] += window_[k] * window_[k];
    }
  }
  std::vector<double> out(length, 0.0);
  for (std::size_t t = 0; t < length; ++t) {
    const std::size_t p = t + pad();
    if (p < padded && norm[p] > 1e-10) out[t] = acc[p] / norm[p];
  }
  return out;
}

}  // namespace sxrkit
