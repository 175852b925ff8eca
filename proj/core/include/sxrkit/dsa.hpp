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
#include <filesystem>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "sxrkit/decomposition.hpp"
#include "sxrkit/metrics.hpp"
#include "sxrkit/wav_io.hpp"
#include "sxrkit/wer.hpp"

namespace sxrkit {

/// Scale factors applied to the interference, noise and artifact errors.
struct ScalingTriple {
  double interf = 1.0;
  double noise = 1.0;
  double artif = 1.0;

  /// Throws UsageError unless all factors are finite and >= 0.
  void validate() const;

  friend bool operator==(const ScalingTriple&, const ScalingTriple&) = default;
};

/// {0.1, 0.2, ..., 1.5}.
std::vector<double> default_dsa_axis();

struct DsaGrid {
  std::vector<double> interf = default_dsa_axis();
  std::vector<double> noise = default_dsa_axis();
  std::vector<double> artif = default_dsa_axis();

  /// Grid points in interf-major order. With collapse_interf the
  /// interference axis is reduced to its first value.
  std::vector<ScalingTriple> points(bool collapse_interf) const;
};

/// s_target + w_i e_interf + w_n e_noise + w_a e_artif.
Waveform dsa_synthesize(const Decomposition& d, const ScalingTriple& w);

/// The decomposition of dsa_synthesize(d, w): each error scaled in place.
Decomposition dsa_rescale(const Decomposition& d, const ScalingTriple& w);

/// One synthesized signal and whatever scores are attached to it.
struct DsaEntry {
  std::string utterance;
  ScalingTriple weights;
  std::string locator;  // file name relative to the run's signal directory
  bool interf_collapsed = false;
  std::optional<SxrReport> metrics;
  std::optional<Transcript> hypothesis;
  std::optional<EditCounts> edits;
  std::optional<std::string> error;

  std::optional<double> wer() const;
};

struct DsaFailure {
  std::string utterance;
  std::string reason;
};

struct DsaManifest {
  std::vector<DsaEntry> entries;
  std::vector<DsaFailure> failures;
};

struct DsaUtterance {
  std::string id;
  ReferenceSet refs;
  std::optional<Transcript> transcript;
};

/// Produces an enhanced estimate of refs.observed. Oracle enhancers may look
/// at the references; blind ones must only use the observation.
using Enhancer = std::function<Waveform(const ReferenceSet&)>;

/// Recognizer wrapper: signal file in, hypothesis out.
using AsrHook = std::function<Transcript(const std::filesystem::path& wav)>;

/// Shell command recognizer. "{wav}" is replaced with the signal path and
/// "{hyp}" with a scratch file the command must write; without "{hyp}" the
/// command's standard output is the hypothesis. Nonzero exit is an error.
AsrHook make_command_asr(std::string command_template);

struct DsaOptions {
  std::filesystem::path signal_dir;
  std::size_t num_delays = 512;
  SampleFormat format = SampleFormat::kFloat64;
  bool compute_metrics = true;
  std::optional<AsrHook> asr;
  std::size_t workers = 1;
};

/// Deterministic file name, e.g. "utt1_i0.100_n1.500_a0.200.wav".
std::string dsa_locator(const std::string& utterance, const ScalingTriple& w);

/// Enhance, decompose and synthesize every grid point of every utterance,
/// writing one file per entry. ASR failures mark the entry and continue;
/// enhancement or decomposition failures skip the utterance and are listed
/// in DsaManifest::failures. Entries keep dataset order.
DsaManifest dsa_grid_run(std::span<const DsaUtterance> dataset, const Enhancer& enhance,
                         const DsaGrid& grid, const DsaOptions& options);

}  // namespace sxrkit
