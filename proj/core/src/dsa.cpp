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

#include "sxrkit/dsa.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <utility>

#include "sxrkit/error.hpp"
#include "sxrkit/parallel.hpp"

namespace sxrkit {

void ScalingTriple::validate() const {
  for (double w : {interf, noise, artif}) {
    if (!std::isfinite(w) || w < 0.0) {
      throw UsageError("scaling factors must be finite and >= 0");
    }
  }
}

std::vector<double> default_dsa_axis() {
  std::vector<double> axis;
  for (int k = 1; k <= 15; ++k) axis.push_back(k / 10.0);
  return axis;
}

std::vector<ScalingTriple> DsaGrid::points(bool collapse_interf) const {
  if (interf.empty() || noise.empty() || artif.empty()) {
    throw UsageError("DSA grid axes must be nonempty");
  }
  const std::size_t ni = collapse_interf ? 1 : interf.size();
  std::vector<ScalingTriple> out;
  out.reserve(ni * noise.size() * artif.size());
  for (std::size_t a = 0; a < ni; ++a) {
    for (double wn : noise) {
      for (double wa : artif) {
        ScalingTriple w{interf[a], wn, wa};
        w.validate();
        out.push_back(w);
      }
    }
  }
  return out;
}

Decomposition dsa_rescale(const Decomposition& d, const ScalingTriple& w) {
  w.validate();
  return Decomposition{d.target, d.interf_err.scaled(w.interf), d.noise_err.scaled(w.noise),
                       d.artif_err.scaled(w.artif), d.num_delays, d.single_talker};
}

Waveform dsa_synthesize(const Decomposition& d, const ScalingTriple& w) {
  w.validate();
  std::vector<double> out(d.target.size());
  for (std::size_t t = 0; t < out.size(); ++t) {
    out[t] = d.target[t] + w.interf * d.interf_err[t] + w.noise * d.noise_err[t] +
             w.artif * d.artif_err[t];
  }
  return Waveform::checked(std::move(out), d.target.sample_rate(), "DSA signal");
}

std::optional<double> DsaEntry::wer() const {
  if (!edits || edits->ref_length == 0) return std::nullopt;
  return edits->rate();
}

namespace {

std::string shell_quote(const std::string& s) {
  std::string out = "'";
  for (char c : s) {
    if (c == '\'') {
      out += "'\\''";
    } else {
      out += c;
    }
  }
  return out + "'";
}

std::string replace_all(std::string s, const std::string& from, const std::string& to) {
  for (std::size_t pos = s.find(from); pos != std::string::npos;
       pos = s.find(from, pos + to.size())) {
    s.replace(pos, from.size(), to);
  }
  return s;
}

}  // namespace

AsrHook make_command_asr(std::string command_template) {
  if (command_template.find("{wav}") == std::string::npos) {
    throw UsageError("ASR command template must contain {wav}");
  }
  return [tmpl = std::move(command_template)](const std::filesystem::path& wav) {
    const bool to_file = tmpl.find("{hyp}") != std::string::npos;
    std::filesystem::path hyp = wav;
    hyp.replace_extension(".hyp.txt");
    std::string cmd = replace_all(tmpl, "{wav}", shell_quote(wav.string()));
    cmd = replace_all(cmd, "{hyp}", shell_quote(hyp.string()));

    std::string text;
    if (to_file) {
      const int status = std::system(cmd.c_str());
      if (status != 0) {
        throw DataError("ASR command exited with status " + std::to_string(status));
      }
      std::ifstream in(hyp);
      if (!in) throw DataError("ASR command did not write " + hyp.string());
      std::ostringstream ss;
      ss << in.rdbuf();
      text = ss.str();
    } else {
      FILE* pipe = ::popen(cmd.c_str(), "r");
      if (pipe == nullptr) throw DataError("cannot start ASR command");
      char buf[4096];
      std::size_t got;
      while ((got = std::fread(buf, 1, sizeof buf, pipe)) > 0) text.append(buf, got);
      const int status = ::pclose(pipe);
      if (status != 0) {
        throw DataError("ASR command exited with status " + std::to_string(status));
      }
    }
    return Transcript::parse(text);
  };
}

std::string dsa_locator(const std::string& utterance, const ScalingTriple& w) {
  char buf[96];
  std::snprintf(buf, sizeof buf, "_i%.3f_n%.3f_a%.3f.wav", w.interf, w.noise, w.artif);
  return utterance + buf;
}

DsaManifest dsa_grid_run(std::span<const DsaUtterance> dataset, const Enhancer& enhance,
                         const DsaGrid& grid, const DsaOptions& options) {
  if (dataset.empty()) throw UsageError("DSA needs a nonempty dataset");
  if (!options.signal_dir.empty()) std::filesystem::create_directories(options.signal_dir);

  std::vector<std::vector<DsaEntry>> per_utt(dataset.size());
  std::vector<std::optional<DsaFailure>> failed(dataset.size());

  parallel_for(dataset.size(), options.workers, [&](std::size_t u) {
    const DsaUtterance& utt = dataset[u];
    std::optional<Decomposition> decomp;
    try {
      const ReferenceSet refs = validate_set(utt.refs);
      const Waveform enhanced = enhance(refs);
      require_same_shape(refs.observed, "observed", enhanced, "enhanced");
      decomp = Decomposer(refs, options.num_delays).decompose(enhanced);
    } catch (const std::exception& e) {
      failed[u] = DsaFailure{utt.id, e.what()};
      return;
    }
    const Decomposition& d = *decomp;
    // A single-talker (or silent-interferer) utterance has e_interf == 0, so
    // every value on the interference axis yields the same signal.
    const bool collapse = d.interf_err.energy() == 0.0;
    for (const ScalingTriple& w : grid.points(collapse)) {
      DsaEntry entry;
      entry.utterance = utt.id;
      entry.weights = w;
      entry.locator = dsa_locator(utt.id, w);
      entry.interf_collapsed = collapse;
      const Waveform signal = dsa_synthesize(d, w);
      const std::filesystem::path file = options.signal_dir / entry.locator;
      write_wav(file, signal, options.format);
      if (options.compute_metrics) entry.metrics = sxr(dsa_rescale(d, w));
      if (options.asr) {
        try {
          entry.hypothesis = (*options.asr)(file);
          if (utt.transcript && !utt.transcript->empty()) {
            entry.edits = align(*utt.transcript, *entry.hypothesis);
          }
        } catch (const std::exception& e) {
          entry.error = std::string("asr: ") + e.what();
        }
      }
      per_utt[u].push_back(std::move(entry));
    }
  });

  DsaManifest manifest;
  for (std::size_t u = 0; u < dataset.size(); ++u) {
    if (failed[u]) {
      manifest.failures.push_back(*failed[u]);
      continue;
    }
    for (auto& e : per_utt[u]) manifest.entries.push_back(std::move(e));
  }
  return manifest;
}

}  // namespace sxrkit
