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
#include <memory>

#include "sxrkit/projection.hpp"
#include "sxrkit/waveform.hpp"

namespace sxrkit {

/// The four orthogonal components of an enhanced signal:
/// enhanced = target + interf_err + noise_err + artif_err.
struct Decomposition {
  Waveform target;
  Waveform interf_err;
  Waveform noise_err;
  Waveform artif_err;
  std::size_t num_delays = 0;
  bool single_talker = false;

  /// Sum of the four components.
  Waveform reassemble() const;
};

/// Nested projectors P_s, P_{s,i}, P_{s,i,n} for one reference set.
///
/// The Gram matrix is assembled once over (s, i, n) and each projector uses
/// its leading block. Build one per utterance and reuse it for every signal
/// decomposed against the same references (OA sweeps, DSA, loss gradients).
class Decomposer {
 public:
  Decomposer(const ReferenceSet& refs, std::size_t num_delays,
             SolverOptions options = {});

  Decomposition decompose(const Waveform& enhanced) const;

  const ProjectionContext& source_projector() const noexcept { return *p_s_; }
  const ProjectionContext& source_interference_projector() const noexcept {
    return *p_si_;
  }
  const ProjectionContext& full_projector() const noexcept { return *p_sin_; }

  std::size_t length() const noexcept { return length_; }
  int sample_rate() const noexcept { return sample_rate_; }
  std::size_t num_delays() const noexcept { return num_delays_; }
  bool single_talker() const noexcept { return single_talker_; }

 private:
  std::size_t length_;
  int sample_rate_;
  std::size_t num_delays_;
  bool single_talker_;
  std::shared_ptr<const ProjectionContext> p_s_;
  std::shared_ptr<const ProjectionContext> p_si_;
  std::shared_ptr<const ProjectionContext> p_sin_;
};

Decomposition decompose(const Waveform& enhanced, const ReferenceSet& refs,
                        std::size_t num_delays);

}  // namespace sxrkit
