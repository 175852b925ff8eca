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

#include "sxrkit/stft.hpp"
#include "sxrkit/waveform.hpp"

namespace sxrkit {

/// Oracle Wiener mask |S|^2 / (|S|^2 + |I|^2 + |N|^2) applied to the
/// observation's STFT. Bins where all three references vanish pass through.
Waveform oracle_wiener(const ReferenceSet& refs, const StftConfig& stft = {});

/// Magnitude spectral subtraction. The noise magnitude is the mean over the
/// first noise_profile_frames frames lying entirely inside the signal;
/// output magnitude is max(|Y| - N, floor |Y|) with the observed phase.
Waveform spectral_subtract(const Waveform& observed, std::size_t noise_profile_frames,
                           const StftConfig& stft = {}, double floor = 0.05);

}  // namespace sxrkit
