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

#include <Eigen/Dense>

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace sxrkit {

/// Correlations between a family of equal-length signals and their delayed
/// copies x^0 ... x^{L-1}, where x^tau[t] = x[t - tau] for t >= tau and 0
/// before (length stays T).
///
/// Everything is computed in the frequency domain. Columns of the implied
/// basis matrix A are ordered family-major: column f*L + tau is the
/// tau-delayed copy of signal f.
class CorrelationBank {
 public:
  /// ``length`` is only consulted when ``signals`` is empty.
  CorrelationBank(std::vector<std::vector<double>> signals, std::size_t num_delays,
                  std::size_t length = 0);

  std::size_t num_families() const noexcept { return signals_.size(); }
  std::size_t num_delays() const noexcept { return num_delays_; }
  std::size_t length() const noexcept { return length_; }

  /// A^T A over all families.
  const Eigen::MatrixXd& gram() const noexcept { return gram_; }

  /// A^T x restricted to the first families families.
  Eigen::VectorXd cross(std::span<const double> x, std::size_t families) const;

  /// A c, truncated to T samples. coeffs covers a family prefix.
  std::vector<double> synthesize(const Eigen::VectorXd& coeffs) const;

  /// Full linear cross-correlation sum_u a[u + lag] * b[u] for
  /// lag in [-(L-1), L-1], returned at index lag + L - 1.
  std::vector<double> correlate(std::size_t a, std::size_t b) const;

 private:
  void assemble_gram();

  std::vector<std::vector<double>> signals_;
  std::vector<std::vector<std::complex<double>>> spectra_;
  std::size_t num_delays_;
  std::size_t length_;
  std::size_t fft_size_;
  Eigen::MatrixXd gram_;
};

}  // namespace sxrkit
