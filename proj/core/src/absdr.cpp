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

#include "sxrkit/absdr.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "sxrkit/error.hpp"

namespace sxrkit {

namespace {

double default_floor(const ReferenceSet& refs, const std::optional<double>& floor) {
  if (floor) {
    if (!(*floor >= 0.0) || !std::isfinite(*floor)) {
      throw UsageError("denominator floor must be finite and >= 0");
    }
    return *floor;
  }
  return 1e-12 * refs.source.energy();
}

double neg_db_ratio(double num, double den) {
  if (num == 0.0) return std::numeric_limits<double>::infinity();
  if (den == 0.0) return -std::numeric_limits<double>::infinity();
  return -10.0 * std::log10(num / den);
}

}  // namespace

void LossConfig::validate() const {
  if (!(alpha >= 1.0) || !std::isfinite(alpha)) {
    throw UsageError("AB-SDR alpha must be finite and >= 1");
  }
  if (num_delays == 0) throw UsageError("loss projections need L >= 1");
}

std::vector<double> default_alpha_grid() {
  std::vector<double> grid;
  for (int k = 0; k <= 5; ++k) grid.push_back(1.0 + 0.5 * k);
  return grid;
}

AbsdrObjective::AbsdrObjective(const ReferenceSet& refs, LossConfig config)
    : config_((config.validate(), config)),
      floor_(default_floor(refs, config.denom_floor)),
      decomposer_(refs, config.num_delays) {
  if (config_.num_delays > kLossDelayWarningThreshold) {
    warnings_.push_back("loss uses L=" + std::to_string(config_.num_delays) +
                        " delays; values above " +
                        std::to_string(kLossDelayWarningThreshold) +
                        " let the projection absorb arbitrary filtering");
  }
}

LossResult AbsdrObjective::loss(const Waveform& enhanced) const {
  const Decomposition d = decomposer_.decompose(enhanced);
  const double a = config_.alpha;
  double target = 0.0, distortion = 0.0;
  for (std::size_t t = 0; t < d.target.size(); ++t) {
    const double v = d.interf_err[t] + d.noise_err[t] + a * d.artif_err[t];
    target += d.target[t] * d.target[t];
    distortion += v * v;
  }
  LossResult r{neg_db_ratio(target, distortion + floor_), warnings_};
  if (target == 0.0) {
    r.diagnostics.push_back(
        "enhanced signal is orthogonal to every delayed source column; loss is +inf");
  }
  return r;
}

GradientResult AbsdrObjective::gradient(const Waveform& enhanced) const {
  const LossResult l = loss(enhanced);
  if (!std::isfinite(l.value)) {
    throw DataError("AB-SDR gradient undefined: loss is not finite");
  }
  const ProjectionContext& ps = decomposer_.source_projector();
  const ProjectionContext& psin = decomposer_.full_projector();
  const double a = config_.alpha;
  const std::size_t T = enhanced.size();
  const auto x = enhanced.samples();

  // M y = (P_sin - P_s) y + a (y - P_sin y); M is symmetric.
  auto apply_m = [&](std::span<const double> y) {
    const std::vector<double> py_s = ps.project(y);
    const std::vector<double> py_sin = psin.project(y);
    std::vector<double> out(T);
    for (std::size_t t = 0; t < T; ++t) {
      out[t] = (py_sin[t] - py_s[t]) + a * (y[t] - py_sin[t]);
    }
    return out;
  };

  const std::vector<double> u = ps.project(x);
  const std::vector<double> v = apply_m(x);
  const std::vector<double> pu = ps.project(u);
  const std::vector<double> mv = apply_m(v);
  const double uu = squared_norm(u);
  const double vv = squared_norm(v) + floor_;
  const double c = -20.0 / std::numbers::ln10;

  GradientResult g{l.value, std::vector<double>(T), l.diagnostics};
  for (std::size_t t = 0; t < T; ++t) g.gradient[t] = c * (pu[t] / uu - mv[t] / vv);
  return g;
}

LossResult absdr_loss(const Waveform& enhanced, const ReferenceSet& refs,
                      const LossConfig& config) {
  return AbsdrObjective(refs, config).loss(enhanced);
}

GradientResult absdr_gradient(const Waveform& enhanced, const ReferenceSet& refs,
                              const LossConfig& config) {
  return AbsdrObjective(refs, config).gradient(enhanced);
}

LossResult snr_loss(const Waveform& enhanced, const ReferenceSet& refs,
                    std::optional<double> denom_floor) {
  validate_set(refs);
  require_same_shape(refs.source, "source", enhanced, "enhanced");
  const double floor = default_floor(refs, denom_floor);
  double err = 0.0;
  for (std::size_t t = 0; t < enhanced.size(); ++t) {
    const double e = enhanced[t] - refs.source[t];
    err += e * e;
  }
  LossResult r{neg_db_ratio(refs.source.energy(), err + floor), {}};
  if (refs.source.energy() == 0.0) r.diagnostics.push_back("source has zero energy; loss is +inf");
  return r;
}

GradientCheck finite_difference_check(const AbsdrObjective& objective,
                                      const Waveform& enhanced, double relative_step) {
  const GradientResult g = objective.gradient(enhanced);
  const double h = relative_step * enhanced.rms();
  if (!(h > 0.0)) throw DataError("finite-difference step is zero (silent signal)");
  std::vector<double> probe = enhanced.vector();
  double max_abs_g = 0.0, max_diff = 0.0;
  for (std::size_t t = 0; t < probe.size(); ++t) {
    const double orig = probe[t];
    probe[t] = orig + h;
    const double up = objective.loss(Waveform(probe, enhanced.sample_rate())).value;
    probe[t] = orig - h;
    const double down = objective.loss(Waveform(probe, enhanced.sample_rate())).value;
    probe[t] = orig;
    const double fd = (up - down) / (2.0 * h);
    max_abs_g = std::max(max_abs_g, std::abs(g.gradient[t]));
    max_diff = std::max(max_diff, std::abs(fd - g.gradient[t]));
  }
  return GradientCheck{max_abs_g > 0.0 ? max_diff / max_abs_g : max_diff, h};
}

}  // namespace sxrkit
