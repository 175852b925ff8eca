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

#include "sxrkit/decomposition.hpp"

#include <string>
#include <vector>

#include "sxrkit/error.hpp"

namespace sxrkit {

Waveform Decomposition::reassemble() const {
  std::vector<double> out(target.size());
  for (std::size_t t = 0; t < out.size(); ++t) {
    out[t] = target[t] + interf_err[t] + noise_err[t] + artif_err[t];
  }
  return Waveform::checked(std::move(out), target.sample_rate(), "reassembled");
}

Decomposer::Decomposer(const ReferenceSet& refs, std::size_t num_delays,
                       SolverOptions options)
    : length_(refs.length()),
      sample_rate_(refs.sample_rate()),
      num_delays_(num_delays),
      single_talker_(refs.single_talker()) {
  validate_set(refs);
  if (num_delays == 0 || num_delays > length_) {
    throw UsageError("number of delays L=" + std::to_string(num_delays) +
                     " must lie in [1, T=" + std::to_string(length_) + "]");
  }
  // Families with zero energy are dropped, so each prefix count tells how
  // many families the nested subspace owns.
  std::vector<std::vector<double>> families;
  std::size_t n_s = 0, n_si = 0;
  if (refs.source.energy() > 0.0) families.push_back(refs.source.vector());
  n_s = families.size();
  if (refs.interference && refs.interference->energy() > 0.0) {
    families.push_back(refs.interference->vector());
  }
  n_si = families.size();
  if (refs.noise.energy() > 0.0) families.push_back(refs.noise.vector());
  const std::size_t n_sin = families.size();

  auto bank = std::make_shared<const CorrelationBank>(std::move(families), num_delays, length_);
  p_s_ = std::make_shared<const ProjectionContext>(bank, n_s, options);
  p_si_ = n_si == n_s ? p_s_ : std::make_shared<const ProjectionContext>(bank, n_si, options);
  p_sin_ = n_sin == n_si ? p_si_ : std::make_shared<const ProjectionContext>(bank, n_sin, options);
}

Decomposition Decomposer::decompose(const Waveform& enhanced) const {
  if (enhanced.size() != length_) {
    throw DataError("length mismatch: enhanced has " + std::to_string(enhanced.size()) +
                    " samples, references have " + std::to_string(length_));
  }
  if (enhanced.sample_rate() != sample_rate_) {
    throw DataError("sample-rate mismatch between enhanced signal and references");
  }
  const auto x = enhanced.samples();
  const std::vector<double> ps = p_s_->project(x);
  const std::vector<double> psi = p_si_ == p_s_ ? ps : p_si_->project(x);
  const std::vector<double> psin = p_sin_ == p_si_ ? psi : p_sin_->project(x);

  const std::size_t T = length_;
  std::vector<double> interf(T), noise(T), artif(T);
  for (std::size_t t = 0; t < T; ++t) {
    interf[t] = psi[t] - ps[t];
    noise[t] = psin[t] - psi[t];
    artif[t] = x[t] - psin[t];
  }
  const int fs = sample_rate_;
  return Decomposition{Waveform::checked(ps, fs, "target"),
                       Waveform::checked(std::move(interf), fs, "interf_err"),
                       Waveform::checked(std::move(noise), fs, "noise_err"),
                       Waveform::checked(std::move(artif), fs, "artif_err"),
                       num_delays_, single_talker_};
}

Decomposition decompose(const Waveform& enhanced, const ReferenceSet& refs,
                        std::size_t num_delays) {
  return Decomposer(refs, num_delays).decompose(enhanced);
}

}  // namespace sxrkit
