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

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace trapkit {

enum class Pauli : std::uint8_t { I = 0, X = 1, Y = 2, Z = 3 };

char pauli_char(Pauli p);
Pauli pauli_from_char(char c);

/** Single-site product with phase: a * b = i^q * result. Returns q mod 4. */
int pauli_multiply_phase(Pauli a, Pauli b, Pauli& result);

/** A Pauli word i^phase * P_0 x ... x P_{n-1}. The phase exponent is kept
 *  mod 4; Hermitian words have phase 0 or 2 (sign +1 / -1). */
class PauliWord {
 public:
  PauliWord() = default;
  explicit PauliWord(int n) : ops_(n, Pauli::I) {}
  PauliWord(std::vector<Pauli> ops, int phase = 0)
      : ops_(std::move(ops)), phase_(((phase % 4) + 4) % 4) {}

  int size() const { return static_cast<int>(ops_.size()); }
  Pauli at(int i) const { return ops_[i]; }
  void set(int i, Pauli p) { ops_[i] = p; }
  int phase() const { return phase_; }
  bool is_hermitian() const { return phase_ % 2 == 0; }
  /** +1 or -1; only meaningful for Hermitian words. */
  int sign() const { return phase_ == 0 ? 1 : -1; }
  bool is_identity() const;

  PauliWord operator*(const PauliWord& other) const;
  bool commutes_with(const PauliWord& other) const;

  std::string str() const;

 private:
  std::vector<Pauli> ops_;
  int phase_ = 0;  // exponent of i
};

/** Sparse adversarial deviation: vertices absent from the map act as
 *  identity. */
struct PauliDeviation {
  std::map<int, Pauli> support;

  bool is_identity() const { return support.empty(); }
  Pauli at(int v) const {
    auto it = support.find(v);
    return it == support.end() ? Pauli::I : it->second;
  }
  void set(int v, Pauli p) {
    if (p == Pauli::I) {
      support.erase(v);
    } else {
      support[v] = p;
    }
  }
  /** Vertices acted on by X or Y (the outcome-flipping components). */
  std::uint64_t xy_support() const;
  std::uint64_t full_support() const;
  bool z_only() const { return xy_support() == 0; }

  bool operator==(const PauliDeviation&) const = default;
  auto operator<=>(const PauliDeviation&) const = default;

  static PauliDeviation single(int v, Pauli p) {
    PauliDeviation d;
    d.set(v, p);
    return d;
  }
};

}  // namespace trapkit
