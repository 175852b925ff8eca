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

#include "sxrkit/projection.hpp"

#include <string>
#include <utility>

#include "sxrkit/error.hpp"

namespace sxrkit {

DelayedBasis::DelayedBasis(Waveform origin, std::size_t num_delays)
    : origin_(std::move(origin)), num_delays_(num_delays) {
  if (num_delays_ == 0 || num_delays_ > origin_.size()) {
    throw UsageError("delayed basis needs 1 <= L <= T");
  }
}

std::vector<double> DelayedBasis::column(std::size_t tau) const {
  const std::size_t T = origin_.size();
  std::vector<double> col(T, 0.0);
  for (std::size_t t = tau; t < T; ++t) col[t] = origin_[t - tau];
  return col;
}

namespace {

std::shared_ptr<const CorrelationBank> bank_from(std::span<const Waveform> refs,
                                                 std::size_t num_delays) {
  if (refs.empty()) throw UsageError("projection needs at least one reference");
  std::vector<std::vector<double>> kept;
  for (std::size_t k = 0; k < refs.size(); ++k) {
    require_same_shape(refs[0], "reference 0", refs[k],
                       "reference " + std::to_string(k));
    if (refs[k].energy() > 0.0) kept.push_back(refs[k].vector());
  }
  if (num_delays == 0 || num_delays > refs[0].size()) {
    throw UsageError("number of delays L=" + std::to_string(num_delays) +
                     " must lie in [1, T=" + std::to_string(refs[0].size()) + "]");
  }
  return std::make_shared<const CorrelationBank>(std::move(kept), num_delays, refs[0].size());
}

}  // namespace

ProjectionContext::ProjectionContext(std::span<const Waveform> refs,
                                     std::size_t num_delays, SolverOptions options)
    : ProjectionContext(bank_from(refs, num_delays), 0, options) {
  families_ = bank_->num_families();
  factorize();
}

ProjectionContext::ProjectionContext(std::shared_ptr<const CorrelationBank> bank,
                                     std::size_t families, SolverOptions options)
    : bank_(std::move(bank)),
      families_(families),
      length_(bank_->length()),
      num_delays_(bank_->num_delays()),
      options_(options) {
  if (families_ > bank_->num_families()) {
    throw UsageError("projection context asks for more families than the bank holds");
  }
  factorize();
}

void ProjectionContext::factorize() {
  const auto n = static_cast<Eigen::Index>(families_ * num_delays_);
  gram_ = bank_->gram().topLeftCorner(n, n);
  if (n == 0) {
    method_ = SolveMethod::kTrivial;
    return;
  }
  const double loading = options_.jitter * gram_.diagonal().mean();
  Eigen::MatrixXd loaded = gram_;
  loaded.diagonal().array() += loading;
  llt_.compute(loaded);
  if (llt_.info() == Eigen::Success) {
    method_ = SolveMethod::kCholesky;
    return;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(gram_);
  if (eig.info() != Eigen::Success) {
    throw Error(ErrorKind::kInternal, "eigendecomposition of the Gram matrix failed");
  }
  const Eigen::VectorXd& lambda = eig.eigenvalues();
  const double cutoff = options_.rank_threshold * lambda.maxCoeff();
  inv_eigvals_ = Eigen::VectorXd::Zero(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    if (lambda(i) > cutoff && lambda(i) > 0.0) inv_eigvals_(i) = 1.0 / lambda(i);
  }
  eigvecs_ = eig.eigenvectors();
  method_ = SolveMethod::kEigen;
}

Eigen::VectorXd ProjectionContext::solve(const Eigen::VectorXd& rhs) const {
  if (method_ == SolveMethod::kCholesky) {
    Eigen::VectorXd c = llt_.solve(rhs);
    for (int step = 0; step < options_.refinement_steps; ++step) {
      c += llt_.solve(rhs - gram_ * c);
    }
    return c;
  }
  return eigvecs_ * inv_eigvals_.cwiseProduct(eigvecs_.transpose() * rhs);
}

Eigen::VectorXd ProjectionContext::coefficients(std::span<const double> x) const {
  if (x.size() != length_) {
    throw DataError("projection input has " + std::to_string(x.size()) +
                    " samples, references have " + std::to_string(length_));
  }
  if (method_ == SolveMethod::kTrivial) return Eigen::VectorXd();
  return solve(bank_->cross(x, families_));
}

std::vector<double> ProjectionContext::project(std::span<const double> x) const {
  if (method_ == SolveMethod::kTrivial) {
    if (x.size() != length_) {
      throw DataError("projection input has " + std::to_string(x.size()) +
                      " samples, references have " + std::to_string(length_));
    }
    return std::vector<double>(length_, 0.0);
  }
  return bank_->synthesize(coefficients(x));
}

Waveform ProjectionContext::project(const Waveform& x) const {
  return Waveform::checked(project(x.samples()), x.sample_rate(), "projection");
}

Waveform project(const Waveform& x, std::span<const Waveform> refs,
                 std::size_t num_delays, const ProjectionContext* cache) {
  if (refs.empty()) throw UsageError("projection needs at least one reference");
  require_same_shape(refs[0], "reference 0", x, "projected signal");
  if (cache != nullptr) {
    if (cache->length() != x.size() || cache->num_delays() != num_delays) {
      throw UsageError("cached projection context does not match T or L");
    }
    return cache->project(x);
  }
  ProjectionContext ctx(refs, num_delays);
  return ctx.project(x);
}

}  // namespace sxrkit
