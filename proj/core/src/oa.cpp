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

#include "sxrkit/oa.hpp"

#include <cmath>
#include <string>

#include "sxrkit/error.hpp"

namespace sxrkit {

namespace {

void check_unit_weight(double w) {
  if (!(w >= 0.0 && w <= 1.0)) {
    throw UsageError("OA weight must lie in [0, 1], got " + std::to_string(w));
  }
}

}  // namespace

std::vector<double> default_oa_weights() {
  std::vector<double> w;
  for (int k = 0; k <= 10; ++k) w.push_back(k / 10.0);
  return w;
}

void OaConfig::validate() const {
  check_unit_weight(weight);
  for (double w : sweep) check_unit_weight(w);
}

Waveform oa_interpolate(const Waveform& enhanced, const Waveform& observed, double weight) {
  check_unit_weight(weight);
  require_same_shape(enhanced, "enhanced", observed, "observed");
  if (weight == 0.0) return enhanced;
  if (weight == 1.0) return observed;
  std::vector<double> out(enhanced.size());
  for (std::size_t t = 0; t < out.size(); ++t) {
    out[t] = (1.0 - weight) * enhanced[t] + weight * observed[t];
  }
  return Waveform::checked(std::move(out), enhanced.sample_rate(), "OA signal");
}

Waveform oa_additive(const Waveform& enhanced, const Waveform& observed, double weight) {
  if (!(weight >= 0.0) || !std::isfinite(weight)) {
    throw UsageError("additive OA weight must be finite and >= 0");
  }
  require_same_shape(enhanced, "enhanced", observed, "observed");
  if (weight == 0.0) return enhanced;
  std::vector<double> out(enhanced.size());
  for (std::size_t t = 0; t < out.size(); ++t) out[t] = enhanced[t] + weight * observed[t];
  return Waveform::checked(std::move(out), enhanced.sample_rate(), "OA signal");
}

OaCondition oa_condition(const Waveform& enhanced, const Waveform& observed) {
  require_same_shape(enhanced, "enhanced", observed, "observed");
  const double ip = dot(enhanced.samples(), observed.samples());
  return OaCondition{ip, ip > 0.0};
}

std::vector<OaSweepPoint> oa_sweep(const Waveform& enhanced, const Waveform& observed,
                                   const Decomposer& decomposer,
                                   std::span<const double> weights) {
  for (double w : weights) check_unit_weight(w);
  std::vector<OaSweepPoint> out;
  out.reserve(weights.size());
  for (double w : weights) {
    out.push_back({w, sxr(decomposer.decompose(oa_interpolate(enhanced, observed, w)))});
  }
  return out;
}

std::vector<OaSweepPoint> oa_sweep(const Waveform& enhanced, const ReferenceSet& refs,
                                   std::size_t num_delays, std::span<const double> weights) {
  for (double w : weights) check_unit_weight(w);
  return oa_sweep(enhanced, refs.observed, Decomposer(refs, num_delays), weights);
}

}  // namespace sxrkit
