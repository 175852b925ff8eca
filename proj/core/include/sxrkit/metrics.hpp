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

#include "sxrkit/decibel.hpp"
#include "sxrkit/decomposition.hpp"
#include "sxrkit/waveform.hpp"

namespace sxrkit {

/// Component energies at or below this fraction of the total decomposed
/// energy count as exact zeros. A least-squares residual is never bit-zero,
/// so "no error" cases would otherwise report ~+300 dB instead of +inf.
inline constexpr double kZeroEnergyFraction = 1e-20;

struct SxrReport {
  Decibel sdr;
  Decibel sir;
  Decibel snr;
  Decibel sar;
  std::size_t num_delays = 0;
  bool single_talker = false;
};

/// Energies feeding the four ratios, after zero-snapping.
struct ComponentEnergies {
  double target = 0.0;              // ||s_target||^2
  double interf = 0.0;              // ||e_interf||^2
  double noise = 0.0;               // ||e_noise||^2
  double artif = 0.0;               // ||e_artif||^2
  double distortion = 0.0;          // ||e_interf + e_noise + e_artif||^2
  double target_interf = 0.0;       // ||s_target + e_interf||^2
  double target_interf_noise = 0.0; // ||s_target + e_interf + e_noise||^2
};

ComponentEnergies component_energies(const Decomposition& d);

/// SDR, SIR, SNR and SAR of a decomposition.
SxrReport sxr(const Decomposition& d);

/// SAR(modified) - SAR(enhanced) from two decompositions against refs.
Decibel sar_improvement(const Waveform& enhanced, const Waveform& modified,
                        const ReferenceSet& refs, std::size_t num_delays);

/// Same, with a decomposer already built for the references.
Decibel sar_improvement(const Waveform& enhanced, const Waveform& modified,
                        const Decomposer& decomposer);

/// Closed-form SAR gain of observation adding with weight w in (0, 1):
/// 10 log10(1 + (w^2 |y|^2 + 2 (1-w) w <P s_hat, y>) / ((1-w)^2 |P s_hat|^2))
/// where P is the full projector. Only valid when y lies in the span of the
/// full basis (true for y = s + i + n).
Decibel oa_sar_improvement_closed_form(const Waveform& enhanced,
                                       const Waveform& observed, double weight,
                                       const ProjectionContext& full_projector);

/// Dataset summary of one metric: mean over finite values, sentinels counted.
struct MetricSummary {
  Decibel mean;  // undefined when no value is finite
  std::size_t finite = 0;
  std::size_t pos_inf = 0;
  std::size_t neg_inf = 0;
  std::size_t undefined = 0;
};

MetricSummary summarize(std::span<const Decibel> values);

struct SxrSummary {
  MetricSummary sdr, sir, snr, sar;
  std::size_t count = 0;
};

SxrSummary summarize(std::span<const SxrReport> reports);

}  // namespace sxrkit
