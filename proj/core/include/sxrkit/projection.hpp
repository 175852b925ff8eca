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

#include <cstddef>
#include <memory>
#include <span>
#include <vector>

#include "sxrkit/correlation.hpp"
#include "sxrkit/waveform.hpp"

namespace sxrkit {

/// A reference signal together with its L zero-padded delays.
class DelayedBasis {
 public:
  DelayedBasis(Waveform origin, std::size_t num_delays);

  const Waveform& origin() const noexcept { return origin_; }
  std::size_t num_delays() const noexcept { return num_delays_; }

  /// x^tau[t] = x[t - tau] for t >= tau, zero before.
  std::vector<double> column(std::size_t tau) const;

 private:
  Waveform origin_;
  std::size_t num_delays_;
};

struct SolverOptions {
  /// Diagonal loading relative to the mean Gram diagonal.
  double jitter = 1e-12;
  /// Eigenvalues below this fraction of the largest are truncated when the
  /// Cholesky route fails.
  double rank_threshold = 1e-10;
  /// Iterative-refinement passes against the unloaded Gram matrix.
  int refinement_steps = 1;
};

enum class SolveMethod { kTrivial, kCholesky, kEigen };

/// Orthogonal projector onto span{x^tau : x in refs, 0 <= tau < L}.
///
/// The T x T matrix is never formed: a projection solves the normal
/// equations (A^T A) c = A^T x with a cached factorization and resynthesizes
/// A c. Immutable after construction and safe to share between threads.
class ProjectionContext {
 public:
  /// Zero-energy references contribute no columns.
  ProjectionContext(std::span<const Waveform> refs, std::size_t num_delays,
                    SolverOptions options = {});

  /// Projector onto the first families families of a shared bank.
  ProjectionContext(std::shared_ptr<const CorrelationBank> bank,
                    std::size_t families, SolverOptions options = {});

  std::vector<double> project(std::span<const double> x) const;
  Waveform project(const Waveform& x) const;

  /// Least-squares coefficients c for x (length families * L).
  Eigen::VectorXd coefficients(std::span<const double> x) const;

  std::size_t length() const noexcept { return length_; }
  std::size_t num_delays() const noexcept { return num_delays_; }
  std::size_t num_families() const noexcept { return families_; }
  SolveMethod method() const noexcept { return method_; }
  const Eigen::MatrixXd& gram() const noexcept { return gram_; }
  const SolverOptions& options() const noexcept { return options_; }

 private:
  void factorize();
  Eigen::VectorXd solve(const Eigen::VectorXd& rhs) const;

  std::shared_ptr<const CorrelationBank> bank_;
  std::size_t families_;
  std::size_t length_;
  std::size_t num_delays_;
  SolverOptions options_;
  SolveMethod method_ = SolveMethod::kTrivial;
  Eigen::MatrixXd gram_;
  Eigen::LLT<Eigen::MatrixXd> llt_;
  Eigen::MatrixXd eigvecs_;
  Eigen::VectorXd inv_eigvals_;
};

/// P x for the span of delayed refs. Pass cache to reuse a context
/// built for the same references and L.
Waveform project(const Waveform& x, std::span<const Waveform> refs,
                 std::size_t num_delays,
                 const ProjectionContext* cache = nullptr);

}  // namespace sxrkit
