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

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace sxrkit {

struct StftConfig {
  std::size_t frame_len = 1024;
  std::size_t hop = 256;

  void validate() const;
};

/// frames x bins complex matrix, row-major by frame.
struct Spectrogram {
  std::size_t frames = 0;
  std::size_t bins = 0;
  std::vector<std::complex<double>> data;

  std::complex<double>& at(std::size_t f, std::size_t k) { return data[f * bins + k]; }
  const std::complex<double>& at(std::size_t f, std::size_t k) const {
    return data[f * bins + k];
  }
};

/// Periodic-Hann STFT with frame_len / 2 zero padding at the head. Synthesis
/// is weighted overlap-add normalized by the summed squared window, so
/// synthesize(analyze(x)) == x up to rounding.
class Stft {
 public:
  explicit Stft(StftConfig config = {});

  const StftConfig& config() const noexcept { return config_; }
  std::size_t pad() const noexcept { return config_.frame_len / 2; }
  std::size_t num_frames(std::size_t length) const;

  Spectrogram analyze(std::span<const double> x) const;
  std::vector<double> synthesize(const Spectrogram& spec, std::size_t length) const;

 private:
  StftConfig config_;
  std::vector<double> window_;
};

}  // namespace sxrkit
