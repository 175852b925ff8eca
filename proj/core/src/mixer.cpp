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

#include "sxrkit/mixer.hpp"

#include <cmath>
#include <string>
#include <vector>

#include "sxrkit/error.hpp"
#include "sxrkit/fft.hpp"

namespace sxrkit {

namespace {

std::vector<double> crop_or_pad(const Waveform& w, std::size_t length, std::mt19937_64& rng,
                                bool allow_pad, const char* field) {
  if (w.size() < length && !allow_pad) {
    throw DataError(std::string(field) + " has " + std::to_string(w.size()) +
                    " samples, shorter than the source (" + std::to_string(length) + ")");
  }
  std::vector<double> out(length, 0.0);
  std::size_t offset = 0;
  if (w.size() > length) {
    std::uniform_int_distribution<std::size_t> pick(0, w.size() - length);
    offset = pick(rng);
  }
  const std::size_t n = std::min(length, w.size());
  for (std::size_t t = 0; t < n; ++t) out[t] = w[offset + t];
  return out;
}

// Gain that brings |x|^2 to |ref|^2 / 10^(db / 10).
double level_gain(double ref_energy, double energy, double db, const char* field) {
  if (std::isinf(db) && db > 0) return 0.0;
  if (std::isnan(db) || std::isinf(db)) {
    throw UsageError(std::string(field) + " level must be finite or +inf");
  }
  if (energy == 0.0) {
    throw DataError(std::string(field) + " has zero energy; cannot reach a finite target level");
  }
  if (ref_energy == 0.0) throw DataError("source has zero energy; levels are undefined");
  return std::sqrt(ref_energy / (energy * std::pow(10.0, db / 10.0)));
}

}  // namespace

Waveform convolve_truncated(const Waveform& x, const Waveform& h) {
  if (x.sample_rate() != h.sample_rate()) {
    throw DataError("impulse response sample rate differs from the signal's");
  }
  const std::size_t n = fft_friendly_size(x.size() + h.size() - 1);
  RealFft fft(n);
  auto xs = fft.forward(x.samples());
  const auto hs = fft.forward(h.samples());
  for (std::size_t k = 0; k < xs.size(); ++k) xs[k] *= hs[k];
  std::vector<double> full = fft.inverse(xs);
  full.resize(x.size());
  for (double& v : full) v /= static_cast<double>(n);
  return Waveform::checked(std::move(full), x.sample_rate(), "convolved signal");
}

ReferenceSet mix(const Waveform& source_in, const std::optional<Waveform>& interference_in,
                 const Waveform& noise_in, const MixSpec& spec) {
  const int fs = source_in.sample_rate();
  if (noise_in.sample_rate() != fs ||
      (interference_in && interference_in->sample_rate() != fs)) {
    throw DataError("sample-rate mismatch between mixer inputs");
  }
  if (interference_in.has_value() != spec.target_sir_db.has_value()) {
    throw UsageError("an interferer needs a target SIR and vice versa");
  }
  std::mt19937_64 rng(spec.seed);
  const std::size_t T = source_in.size();

  Waveform source = spec.rirs.source ? convolve_truncated(source_in, *spec.rirs.source) : source_in;
  Waveform noise = Waveform::checked(crop_or_pad(noise_in, T, rng, false, "noise"), fs, "noise");
  if (spec.rirs.noise) noise = convolve_truncated(noise, *spec.rirs.noise);
  std::optional<Waveform> interference;
  if (interference_in) {
    interference = Waveform::checked(crop_or_pad(*interference_in, T, rng, true, "interference"),
                                     fs, "interference");
    if (spec.rirs.interference) {
      interference = convolve_truncated(*interference, *spec.rirs.interference);
    }
  }

  const double es = source.energy();
  noise = noise.scaled(level_gain(es, noise.energy(), spec.target_snr_db, "noise"));
  if (interference) {
    interference = interference->scaled(
        level_gain(es, interference->energy(), *spec.target_sir_db, "interference"));
  }

  std::vector<double> y(T);
  for (std::size_t t = 0; t < T; ++t) {
    y[t] = source[t] + (interference ? (*interference)[t] : 0.0) + noise[t];
  }
  return ReferenceSet{std::move(source), std::move(interference), std::move(noise),
                      Waveform::checked(std::move(y), fs, "observed")};
}

double sample_level_db(double lo, double hi, std::mt19937_64& rng) {
  if (!(lo <= hi) || !std::isfinite(lo) || !std::isfinite(hi)) {
    throw UsageError("level range must be finite with lo <= hi");
  }
  if (lo == hi) return lo;
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

}  // namespace sxrkit
