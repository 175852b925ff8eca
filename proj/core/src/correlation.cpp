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

#include "sxrkit/correlation.hpp"

#include <string>
#include <utility>

#include "sxrkit/error.hpp"
#include "sxrkit/fft.hpp"

namespace sxrkit {

CorrelationBank::CorrelationBank(std::vector<std::vector<double>> signals,
                                 std::size_t num_delays, std::size_t length)
    : signals_(std::move(signals)),
      num_delays_(num_delays),
      length_(signals_.empty() ? length : signals_.front().size()),
      fft_size_(0) {
  if (num_delays_ == 0) throw UsageError("number of delays L must be >= 1");
  for (const auto& s : signals_) {
    if (s.size() != length_) {
      throw DataError("correlation bank: signals must share one length");
    }
  }
  if (!signals_.empty() && num_delays_ > length_) {
    throw UsageError("number of delays L=" + std::to_string(num_delays_) +
                     " exceeds signal length T=" + std::to_string(length_));
  }
  if (signals_.empty()) {
    gram_.resize(0, 0);
    return;
  }
  // Linear (non-wrapping) correlation up to lag L-1 needs N >= T + L - 1.
  fft_size_ = fft_friendly_size(length_ + num_delays_ - 1);
  RealFft fft(fft_size_);
  spectra_.reserve(signals_.size());
  for (const auto& s : signals_) spectra_.push_back(fft.forward(s));
  assemble_gram();
}

std::vector<double> CorrelationBank::correlate(std::size_t a, std::size_t b) const {
  RealFft fft(fft_size_);
  const auto& xa = spectra_[a];
  const auto& xb = spectra_[b];
  std::vector<std::complex<double>> prod(xa.size());
  for (std::size_t k = 0; k < prod.size(); ++k) prod[k] = xa[k] * std::conj(xb[k]);
  const std::vector<double> circ = fft.inverse(prod);
  const double scale = 1.0 / static_cast<double>(fft_size_);
  const std::size_t L = num_delays_;
  std::vector<double> out(2 * L - 1);
  for (std::size_t lag = 0; lag < L; ++lag) {
    out[L - 1 + lag] = circ[lag] * scale;
    if (lag > 0) out[L - 1 - lag] = circ[fft_size_ - lag] * scale;
  }
  return out;
}

void CorrelationBank::assemble_gram() {
  const std::size_t k = signals_.size();
  const std::size_t L = num_delays_;
  const std::size_t T = length_;
  gram_.resize(static_cast<Eigen::Index>(k * L), static_cast<Eigen::Index>(k * L));

  for (std::size_t a = 0; a < k; ++a) {
    for (std::size_t b = a; b < k; ++b) {
      const std::vector<double> r = correlate(a, b);
      const auto& xa = signals_[a];
      const auto& xb = signals_[b];
      auto block = gram_.block(static_cast<Eigen::Index>(a * L),
                               static_cast<Eigen::Index>(b * L),
                               static_cast<Eigen::Index>(L),
                               static_cast<Eigen::Index>(L));
      // Row 0 and column 0 are plain correlations; the head padding only
      // drops tail products as both delays grow, one per diagonal step.
      for (std::size_t q = 0; q < L; ++q) block(0, static_cast<Eigen::Index>(q)) = r[L - 1 + q];
      for (std::size_t p = 1; p < L; ++p) block(static_cast<Eigen::Index>(p), 0) = r[L - 1 - p];
      for (std::size_t p = 0; p + 1 < L; ++p) {
        for (std::size_t q = 0; q + 1 < L; ++q) {
          block(static_cast<Eigen::Index>(p + 1), static_cast<Eigen::Index>(q + 1)) =
              block(static_cast<Eigen::Index>(p), static_cast<Eigen::Index>(q)) -
              xa[T - 1 - p] * xb[T - 1 - q];
        }
      }
      if (a == b) {
        // Exact symmetry within diagonal blocks.
        Eigen::MatrixXd sym = 0.5 * (Eigen::MatrixXd(block) + Eigen::MatrixXd(block).transpose());
        block = sym;
      } else {
        gram_.block(static_cast<Eigen::Index>(b * L), static_cast<Eigen::Index>(a * L),
                    static_cast<Eigen::Index>(L), static_cast<Eigen::Index>(L)) =
            Eigen::MatrixXd(block).transpose();
      }
    }
  }
}

Eigen::VectorXd CorrelationBank::cross(std::span<const double> x,
                                       std::size_t families) const {
  if (x.size() != length_) {
    throw DataError("projection input has " + std::to_string(x.size()) +
                    " samples, references have " + std::to_string(length_));
  }
  const std::size_t L = num_delays_;
  Eigen::VectorXd out(static_cast<Eigen::Index>(families * L));
  if (families == 0) return out;
  RealFft fft(fft_size_);
  const auto spectrum = fft.forward(x);
  const double scale = 1.0 / static_cast<double>(fft_size_);
  std::vector<std::complex<double>> prod(spectrum.size());
  for (std::size_t f = 0; f < families; ++f) {
    const auto& xf = spectra_[f];
    for (std::size_t k = 0; k < prod.size(); ++k) prod[k] = spectrum[k] * std::conj(xf[k]);
    const std::vector<double> circ = fft.inverse(prod);
    for (std::size_t tau = 0; tau < L; ++tau) {
      out(static_cast<Eigen::Index>(f * L + tau)) = circ[tau] * scale;
    }
  }
  return out;
}

std::vector<double> CorrelationBank::synthesize(const Eigen::VectorXd& coeffs) const {
  const std::size_t L = num_delays_;
  const auto n = static_cast<std::size_t>(coeffs.size());
  if (n % L != 0 || n / L > signals_.size()) {
    throw UsageError("coefficient vector does not match the delayed basis");
  }
  std::vector<double> out(length_, 0.0);
  if (n == 0) return out;
  RealFft fft(fft_size_);
  std::vector<std::complex<double>> acc(fft.bins(), {0.0, 0.0});
  std::vector<double> filt(L);
  for (std::size_t f = 0; f < n / L; ++f) {
    for (std::size_t tau = 0; tau < L; ++tau) {
      filt[tau] = coeffs(static_cast<Eigen::Index>(f * L + tau));
    }
    const auto cf = fft.forward(filt);
    const auto& xf = spectra_[f];
    for (std::size_t k = 0; k < acc.size(); ++k) acc[k] += xf[k] * cf[k];
  }
  const std::vector<double> conv = fft.inverse(acc);
  const double scale = 1.0 / static_cast<double>(fft_size_);
  for (std::size_t t = 0; t < length_; ++t) out[t] = conv[t] * scale;
  return out;
}

}  // namespace sxrkit
