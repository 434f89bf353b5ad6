// Copyright 2026 The trapkit developers
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <numbers>

namespace trapkit {

/** An angle k*pi/4 with k mod 8. All measurement angles and preparation
 *  rotations live on this grid. */
class Angle {
 public:
  constexpr Angle() = default;
  constexpr explicit Angle(int k) : k_(((k % 8) + 8) % 8) {}

  constexpr int k() const { return k_; }
  double radians() const { return k_ * std::numbers::pi / 4.0; }

  constexpr Angle operator+(Angle other) const { return Angle(k_ + other.k_); }
  constexpr Angle operator-(Angle other) const { return Angle(k_ - other.k_); }
  constexpr Angle operator-() const { return Angle(-k_); }
  constexpr bool operator==(const Angle&) const = default;

  constexpr Angle plus_pi() const { return Angle(k_ + 4); }
  /** Multiple of pi/2, i.e. implementable with S and Z gates. */
  constexpr bool is_clifford() const { return (k_ % 2) == 0; }

  static constexpr Angle pi() { return Angle(4); }
  static constexpr Angle half_pi() { return Angle(2); }

 private:
  int k_ = 0;
};

}  // namespace trapkit
