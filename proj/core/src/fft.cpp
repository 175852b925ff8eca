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

#include "sxrkit/fft.hpp"

#include <fftw3.h>

#include <algorithm>
#include <map>
#include <mutex>
#include <utility>

#include "sxrkit/error.hpp"

namespace sxrkit {

namespace detail {

struct FftPlans {
  fftw_plan forward;
  fftw_plan inverse;
};

}  // namespace detail

namespace {

using detail::FftPlans;

// FFTW's planner is not thread-safe; plans live for the whole process.
const FftPlans& plans_for(std::size_t n) {
  static std::mutex mutex;
  static std::map<std::size_t, FftPlans> cache;
  std::lock_guard lock(mutex);
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;

  std::vector<double> real(n);
  std::vector<std::complex<double>> spec(n / 2 + 1);
  auto* cplx = reinterpret_cast<fftw_complex*>(spec.data());
  const int size = static_cast<int>(n);
  const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
  FftPlans p{fftw_plan_dft_r2c_1d(size, real.data(), cplx, flags),
             fftw_plan_dft_c2r_1d(size, cplx, real.data(), flags)};
  if (p.forward == nullptr || p.inverse == nullptr) {
    throw Error(ErrorKind::kInternal, "FFTW failed to create a plan");
  }
  return cache.emplace(n, p).first->second;
}

}  // namespace

RealFft::RealFft(std::size_t n) : n_(n), plans_(nullptr) {
  if (n == 0) throw UsageError("FFT size must be positive");
  plans_ = &plans_for(n);
}

std::vector<std::complex<double>> RealFft::forward(
    std::span<const double> in) const {
  if (in.size() > n_) throw UsageError("FFT input longer than transform size");
  std::vector<double> buf(n_, 0.0);
  std::copy(in.begin(), in.end(), buf.begin());
  std::vector<std::complex<double>> out(bins());
  fftw_execute_dft_r2c(plans_->forward,
                       buf.data(),
                       reinterpret_cast<fftw_complex*>(out.data()));
  return out;
}

std::vector<double> RealFft::inverse(
    std::span<const std::complex<double>> spectrum) const {
  if (spectrum.size() != bins()) {
    throw UsageError("inverse FFT expects size/2+1 bins");
  }
  // c2r overwrites its input.
  std::vector<std::complex<double>> buf(spectrum.begin(), spectrum.end());
  std::vector<double> out(n_);
  fftw_execute_dft_c2r(plans_->inverse,
                       reinterpret_cast<fftw_complex*>(buf.data()), out.data());
  return out;
}

std::size_t fft_friendly_size(std::size_t min_size) {
  std::size_t n = std::max<std::size_t>(min_size, 1);
  for (;; ++n) {
    std::size_t m = n;
    for (std::size_t f : {2u, 3u, 5u}) {
      while (m % f == 0) m /= f;
    }
    if (m == 1) return n;
  }
}

}  // namespace sxrkit
