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

#include <cmath>
#include <limits>
#include <string>

namespace sxrkit {

/// dB value on the extended real line. +inf, -inf and "undefined" are kept
/// as sentinels rather than clamped; arithmetic follows IEEE extended-real
/// rules (inf - inf is undefined).
class Decibel {
 public:
  enum class Kind { kFinite, kPosInf, kNegInf, kUndefined };

  constexpr Decibel() = default;
  constexpr explicit Decibel(double value) : value_(value) {}

  static constexpr Decibel pos_inf() {
    return Decibel(std::numeric_limits<double>::infinity());
  }
  static constexpr Decibel neg_inf() {
    return Decibel(-std::numeric_limits<double>::infinity());
  }
  static constexpr Decibel undefined() {
    return Decibel(std::numeric_limits<double>::quiet_NaN());
  }

  double value() const noexcept { return value_; }
  Kind kind() const noexcept {
    if (std::isnan(value_)) return Kind::kUndefined;
    if (std::isinf(value_)) return value_ > 0 ? Kind::kPosInf : Kind::kNegInf;
    return Kind::kFinite;
  }
  bool finite() const noexcept { return std::isfinite(value_); }

  /// "+inf", "-inf", "undefined" or the shortest round-trip decimal.
  std::string to_string() const;

  /// Inverse of to_string().
  static Decibel parse(const std::string& token);

  friend Decibel operator-(Decibel a, Decibel b) { return Decibel(a.value_ - b.value_); }
  friend Decibel operator+(Decibel a, Decibel b) { return Decibel(a.value_ + b.value_); }

 private:
  double value_ = std::numeric_limits<double>::quiet_NaN();
};

/// 10 log10(num / den) with sentinels: den == 0 gives +inf (or undefined if
/// num == 0 too); num == 0 with den > 0 gives -inf.
Decibel energy_ratio_db(double num, double den);

}  // namespace sxrkit
