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
#include <string>
#include <vector>

#include "sxrkit/decomposition.hpp"
#include "sxrkit/waveform.hpp"

namespace sxrkit {

/// Projection sizes above this give the loss enough freedom to reward
/// meaningless outputs; they are allowed but flagged.
inline constexpr std::size_t kLossDelayWarningThreshold = 8;

struct LossConfig {
  /// Artifact weight; 1 gives the plain SDR loss.
  double alpha = 1.0;
  std::size_t num_delays = 1;
  /// Added to the distortion energy. Unset means 1e-12 * ||s||^2; 0 disables.
  std::optional<double> denom_floor;

  static LossConfig single_talker() { return {1.5, 2, std::nullopt}; }
  static LossConfig multi_talker() { return {2.0, 1, std::nullopt}; }

  void validate() const;
};

/// {1.0, 1.5, ..., 3.5}.
std::vector<double> default_alpha_grid();

struct LossResult {
  double value = 0.0;
  std::vector<std::string> diagnostics;
};

struct GradientResult {
  double loss = 0.0;
  std::vector<double> gradient;
  std::vector<std::string> diagnostics;
};

/// Artifact-boosted SDR objective for one reference set:
///   -10 log10(|s_target|^2 / (|e_interf + e_noise + alpha e_artif|^2 + floor))
///
/// Holds the decomposer so repeated evaluations against the same references
/// (optimizer steps, finite differences) reuse the factorized Gram matrices.
class AbsdrObjective {
 public:
  AbsdrObjective(const ReferenceSet& refs, LossConfig config);

  /// Zero target energy gives +inf with a diagnostic.
  LossResult loss(const Waveform& enhanced) const;

  /// Exact gradient w.r.t. every sample of the enhanced signal. With
  /// u = P_s x and M = (P_sin - P_s) + alpha (I - P_sin), v = M x:
  ///   grad = -(20 / ln 10) (P_s u / |u|^2 - M v / (|v|^2 + floor)).
  /// Throws DataError when the loss is not finite.
  GradientResult gradient(const Waveform& enhanced) const;

  const LossConfig& config() const noexcept { return config_; }
  double denom_floor() const noexcept { return floor_; }
  const Decomposer& decomposer() const noexcept { return decomposer_; }

 private:
  LossConfig config_;
  double floor_;
  Decomposer decomposer_;
  std::vector<std::string> warnings_;
};

LossResult absdr_loss(const Waveform& enhanced, const ReferenceSet& refs,
                      const LossConfig& config);

GradientResult absdr_gradient(const Waveform& enhanced, const ReferenceSet& refs,
                              const LossConfig& config);

/// Scale-dependent SNR loss -10 log10(|s|^2 / (|enh - s|^2 + floor)); the
/// floor defaults to 1e-12 * |s|^2 as for the AB-SDR loss.
LossResult snr_loss(const Waveform& enhanced, const ReferenceSet& refs,
                    std::optional<double> denom_floor = std::nullopt);

struct GradientCheck {
  double max_relative_error = 0.0;  // max_t |g_fd - g| / max_t |g|
  double step = 0.0;
};

/// Central finite differences of objective on every sample, step
/// relative_step times the signal RMS.
GradientCheck finite_difference_check(const AbsdrObjective& objective,
                                      const Waveform& enhanced,
                                      double relative_step = 1e-5);

}  // namespace sxrkit
