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
#include <optional>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

namespace sxrkit {

/// Finite-length, single-channel, uniformly sampled real signal.
///
/// Construction enforces the invariants (T >= 1, all samples finite,
/// sample_rate > 0); instances are immutable afterwards.
class Waveform {
 public:
  Waveform(std::vector<double> samples, int sample_rate);

  /// Same as the constructor but names the offending field in errors.
  static Waveform checked(std::vector<double> samples, int sample_rate,
                          std::string_view field);

  /// All-zero signal of the given length.
  static Waveform zeros(std::size_t length, int sample_rate);

  std::span<const double> samples() const noexcept { return samples_; }
  const std::vector<double>& vector() const noexcept { return samples_; }
  std::size_t size() const noexcept { return samples_.size(); }
  int sample_rate() const noexcept { return sample_rate_; }
  double operator[](std::size_t t) const noexcept { return samples_[t]; }

  double energy() const noexcept;
  double rms() const noexcept;

  Waveform scaled(double gain) const;

  friend bool operator==(const Waveform&, const Waveform&) = default;

 private:
  struct Unchecked {};
  Waveform(std::vector<double> samples, int sample_rate, Unchecked)
      : samples_(std::move(samples)), sample_rate_(sample_rate) {}

  std::vector<double> samples_;
  int sample_rate_;
};

Waveform operator+(const Waveform& a, const Waveform& b);
Waveform operator-(const Waveform& a, const Waveform& b);

double dot(std::span<const double> a, std::span<const double> b);
double squared_norm(std::span<const double> x);

/// Aligned reference source, optional interference, noise and the observed
/// mixture. No interference means a single-talker scenario.
struct ReferenceSet {
  Waveform source;
  std::optional<Waveform> interference;
  Waveform noise;
  Waveform observed;

  std::size_t length() const noexcept { return source.size(); }
  int sample_rate() const noexcept { return source.sample_rate(); }
  bool single_talker() const noexcept { return !interference.has_value(); }
};

/// Checks the shared-length and shared-rate invariants and returns the set.
/// Observed == s + i + n is not required here; only mixer-built sets
/// guarantee it.
ReferenceSet validate_set(ReferenceSet set);

/// Throws DataError unless ``other`` matches the length and sample rate of
/// ``what``; messages carry both field names.
void require_same_shape(const Waveform& what, std::string_view what_name,
                        const Waveform& other, std::string_view other_name);

}  // namespace sxrkit
