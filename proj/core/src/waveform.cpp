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

#include "sxrkit/waveform.hpp"

#include <cmath>
#include <numeric>
#include <string>
#include <utility>

#include "sxrkit/error.hpp"

namespace sxrkit {

namespace {

std::string prefix(std::string_view field) {
  return field.empty() ? std::string("waveform") : std::string(field);
}

}  // namespace

Waveform::Waveform(std::vector<double> samples, int sample_rate)
    : Waveform(checked(std::move(samples), sample_rate, {})) {}

Waveform Waveform::checked(std::vector<double> samples, int sample_rate,
                           std::string_view field) {
  if (samples.empty()) {
    throw DataError(prefix(field) + ": zero-length signal");
  }
  if (sample_rate <= 0) {
    throw DataError(prefix(field) + ": sample rate must be positive, got " +
                    std::to_string(sample_rate));
  }
  for (std::size_t t = 0; t < samples.size(); ++t) {
    if (!std::isfinite(samples[t])) {
      throw DataError(prefix(field) + ": non-finite sample at index " +
                      std::to_string(t));
    }
  }
  Waveform w(std::move(samples), sample_rate, Unchecked{});
  return w;
}

Waveform Waveform::zeros(std::size_t length, int sample_rate) {
  return checked(std::vector<double>(length, 0.0), sample_rate, {});
}

double Waveform::energy() const noexcept { return squared_norm(samples_); }

double Waveform::rms() const noexcept {
  return std::sqrt(energy() / static_cast<double>(samples_.size()));
}

Waveform Waveform::scaled(double gain) const {
  std::vector<double> out(samples_);
  for (double& v : out) v *= gain;
  return checked(std::move(out), sample_rate_, "scaled waveform");
}

Waveform operator+(const Waveform& a, const Waveform& b) {
  require_same_shape(a, "lhs", b, "rhs");
  std::vector<double> out(a.size());
  for (std::size_t t = 0; t < out.size(); ++t) out[t] = a[t] + b[t];
  return Waveform::checked(std::move(out), a.sample_rate(), "sum");
}

Waveform operator-(const Waveform& a, const Waveform& b) {
  require_same_shape(a, "lhs", b, "rhs");
  std::vector<double> out(a.size());
  for (std::size_t t = 0; t < out.size(); ++t) out[t] = a[t] - b[t];
  return Waveform::checked(std::move(out), a.sample_rate(), "difference");
}

double dot(std::span<const double> a, std::span<const double> b) {
  return std::inner_product(a.begin(), a.end(), b.begin(), 0.0);
}

double squared_norm(std::span<const double> x) { return dot(x, x); }

void require_same_shape(const Waveform& what, std::string_view what_name,
                        const Waveform& other, std::string_view other_name) {
  if (other.size() != what.size()) {
    throw DataError("length mismatch: " + std::string(other_name) + " has " +
                    std::to_string(other.size()) + " samples, " +
                    std::string(what_name) + " has " +
                    std::to_string(what.size()));
  }
  if (other.sample_rate() != what.sample_rate()) {
    throw DataError("sample-rate mismatch: " + std::string(other_name) +
                    " is " + std::to_string(other.sample_rate()) + " Hz, " +
                    std::string(what_name) + " is " +
                    std::to_string(what.sample_rate()) + " Hz");
  }
}

ReferenceSet validate_set(ReferenceSet set) {
  if (set.interference) {
    require_same_shape(set.source, "source", *set.interference, "interference");
  }
  require_same_shape(set.source, "source", set.noise, "noise");
  require_same_shape(set.source, "source", set.observed, "observed");
  return set;
}

}  // namespace sxrkit
