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
#include <span>
#include <vector>

#include "sxrkit/decomposition.hpp"
#include "sxrkit/metrics.hpp"
#include "sxrkit/waveform.hpp"

namespace sxrkit {

/// {0.0, 0.1, ..., 1.0}.
std::vector<double> default_oa_weights();

struct OaConfig {
  double weight = 0.0;
  std::vector<double> sweep = default_oa_weights();

  void validate() const;
};

/// (1 - w) enh + w obs for w in [0, 1]; w = 0 and w = 1 return the inputs
/// bit-exactly.
Waveform oa_interpolate(const Waveform& enhanced, const Waveform& observed, double weight);

/// enh + w obs for w >= 0. Equals oa_interpolate(enh, obs, w / (1 + w))
/// times (1 + w), so every SXR metric matches the interpolated form.
Waveform oa_additive(const Waveform& enhanced, const Waveform& observed, double weight);

struct OaCondition {
  double inner_product = 0.0;
  /// <enh, obs> > 0: OA with any w in (0, 1) then raises SAR.
  bool satisfied = false;
};

OaCondition oa_condition(const Waveform& enhanced, const Waveform& observed);

struct OaSweepPoint {
  double weight = 0.0;
  SxrReport report;
};

/// Metrics of oa_interpolate(enh, refs.observed, w) for each weight.
std::vector<OaSweepPoint> oa_sweep(const Waveform& enhanced, const ReferenceSet& refs,
                                   std::size_t num_delays, std::span<const double> weights);

/// Same, reusing a decomposer built for the references.
std::vector<OaSweepPoint> oa_sweep(const Waveform& enhanced, const Waveform& observed,
                                   const Decomposer& decomposer,
                                   std::span<const double> weights);

}  // namespace sxrkit
