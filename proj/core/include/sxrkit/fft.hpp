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

namespace detail {
struct FftPlans;
}

/// Real-to-complex FFT of a fixed size. Plans are shared process-wide and
/// executing a transform is thread-safe.
class RealFft {
 public:
  explicit RealFft(std::size_t n);

  std::size_t size() const noexcept { return n_; }
  std::size_t bins() const noexcept { return n_ / 2 + 1; }

  /// Forward transform; in may be shorter than size() and is zero-padded.
  std::vector<std::complex<double>> forward(std::span<const double> in) const;

  /// Unnormalized inverse (the result is size() times the input signal).
  std::vector<double> inverse(std::span<const std::complex<double>> spectrum) const;

 private:
  std::size_t n_;
  const detail::FftPlans* plans_;
};

/// Smallest n >= min_size whose only prime factors are 2, 3 and 5.
std::size_t fft_friendly_size(std::size_t min_size);

}  // namespace sxrkit
