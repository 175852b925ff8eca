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

#include "sxrkit/metrics.hpp"

#include <charconv>
#include <cmath>
#include <system_error>

#include "sxrkit/error.hpp"

namespace sxrkit {

std::string Decibel::to_string() const {
  switch (kind()) {
    case Kind::kPosInf:
      return "+inf";
    case Kind::kNegInf:
      return "-inf";
    case Kind::kUndefined:
      return "undefined";
    case Kind::kFinite:
      break;
  }
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), value_);
  return std::string(buf, res.ptr);
}

Decibel Decibel::parse(const std::string& token) {
  if (token == "+inf" || token == "inf") return pos_inf();
  if (token == "-inf") return neg_inf();
  if (token == "undefined") return undefined();
  double v = 0.0;
  auto res = std::from_chars(token.data(), token.data() + token.size(), v);
  if (res.ec != std::errc() || res.ptr != token.data() + token.size() || !std::isfinite(v)) {
    throw DataError("not a dB value: '" + token + "'");
  }
  return Decibel(v);
}

Decibel energy_ratio_db(double num, double den) {
  if (den == 0.0) return num == 0.0 ? Decibel::undefined() : Decibel::pos_inf();
  if (num == 0.0) return Decibel::neg_inf();
  return Decibel(10.0 * std::log10(num / den));
}

ComponentEnergies component_energies(const Decomposition& d) {
  const std::size_t T = d.target.size();
  ComponentEnergies e;
  for (std::size_t t = 0; t < T; ++t) {
    const double s = d.target[t], i = d.interf_err[t], n = d.noise_err[t], a = d.artif_err[t];
    e.target += s * s;
    e.interf += i * i;
    e.noise += n * n;
    e.artif += a * a;
    e.distortion += (i + n + a) * (i + n + a);
    e.target_interf += (s + i) * (s + i);
    e.target_interf_noise += (s + i + n) * (s + i + n);
  }
  const double zero = kZeroEnergyFraction * (e.target + e.interf + e.noise + e.artif);
  for (double* v : {&e.target, &e.interf, &e.noise, &e.artif, &e.distortion,
                    &e.target_interf, &e.target_interf_noise}) {
    if (*v <= zero) *v = 0.0;
  }
  return e;
}

SxrReport sxr(const Decomposition& d) {
  const ComponentEnergies e = component_energies(d);
  SxrReport r;
  r.sdr = energy_ratio_db(e.target, e.distortion);
  r.sir = d.single_talker ? Decibel::pos_inf() : energy_ratio_db(e.target, e.interf);
  r.snr = energy_ratio_db(e.target_interf, e.noise);
  r.sar = energy_ratio_db(e.target_interf_noise, e.artif);
  r.num_delays = d.num_delays;
  r.single_talker = d.single_talker;
  return r;
}

Decibel sar_improvement(const Waveform& enhanced, const Waveform& modified,
                        const Decomposer& decomposer) {
  const Decibel before = sxr(decomposer.decompose(enhanced)).sar;
  const Decibel after = sxr(decomposer.decompose(modified)).sar;
  return after - before;
}

Decibel sar_improvement(const Waveform& enhanced, const Waveform& modified,
                        const ReferenceSet& refs, std::size_t num_delays) {
  require_same_shape(enhanced, "enhanced", modified, "modified");
  return sar_improvement(enhanced, modified, Decomposer(refs, num_delays));
}

Decibel oa_sar_improvement_closed_form(const Waveform& enhanced,
                                       const Waveform& observed, double weight,
                                       const ProjectionContext& full_projector) {
  require_same_shape(enhanced, "enhanced", observed, "observed");
  if (!(weight > 0.0 && weight < 1.0)) {
    throw UsageError("closed-form SAR improvement needs 0 < w < 1");
  }
  const std::vector<double> proj = full_projector.project(enhanced.samples());
  const double proj_energy = squared_norm(proj);
  const double obs_energy = observed.energy();
  const double cross = dot(proj, observed.samples());
  const double w = weight;
  const double num = w * w * obs_energy + 2.0 * (1.0 - w) * w * cross;
  const double den = (1.0 - w) * (1.0 - w) * proj_energy;
  if (den == 0.0) return num > 0.0 ? Decibel::pos_inf() : Decibel::undefined();
  return Decibel(10.0 * std::log10(1.0 + num / den));
}

MetricSummary summarize(std::span<const Decibel> values) {
  MetricSummary s;
  double sum = 0.0;
  for (const Decibel& v : values) {
    switch (v.kind()) {
      case Decibel::Kind::kFinite:
        sum += v.value();
        ++s.finite;
        break;
      case Decibel::Kind::kPosInf:
        ++s.pos_inf;
        break;
      case Decibel::Kind::kNegInf:
        ++s.neg_inf;
        break;
      case Decibel::Kind::kUndefined:
        ++s.undefined;
        break;
    }
  }
  if (s.finite > 0) s.mean = Decibel(sum / static_cast<double>(s.finite));
  return s;
}

SxrSummary summarize(std::span<const SxrReport> reports) {
  std::vector<Decibel> sdr, sir, snr, sar;
  for (const SxrReport& r : reports) {
    sdr.push_back(r.sdr);
    sir.push_back(r.sir);
    snr.push_back(r.snr);
    sar.push_back(r.sar);
  }
  return SxrSummary{summarize(sdr), summarize(sir), summarize(snr), summarize(sar),
                    reports.size()};
}

}  // namespace sxrkit
