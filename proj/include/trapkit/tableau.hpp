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
#include <optional>
#include <vector>

#include "trapkit/pauli.hpp"
#include "trapkit/random.hpp"

namespace trapkit {

/** Aaronson-Gottesman stabiliser tableau for up to 64 qubits. Rows 0..n-1
 *  are destabilisers, rows n..2n-1 stabilisers; one scratch row. */
class Tableau {
 public:
  explicit Tableau(int num_qubits);

  int num_qubits() const { return n_; }

  void apply_h(int q);
  void apply_s(int q);
  void apply_sdg(int q);
  void apply_x(int q);
  void apply_y(int q);
  void apply_z(int q);
  void apply_pauli(int q, Pauli p);
  void apply_cnot(int control, int target);
  void apply_cz(int a, int b);

  /** Z-basis measurement. Forced outcomes are honoured only when the result
   *  is random; forcing a deterministically wrong outcome throws. */
  int measure_z(int q, Rng* rng, std::optional<int> forced = std::nullopt);

  /** True with sign when the Hermitian word is in +/- the stabiliser group;
   *  nullopt when the measurement outcome would be random. */
  std::optional<int> deterministic_sign(const PauliWord& word) const;

  /** Measures a Hermitian Pauli observable (outcome 0 for +1). */
  int measure_pauli(const PauliWord& word, Rng* rng,
                    std::optional<int> forced = std::nullopt);

 private:
  struct Row {
    std::uint64_t x = 0;
    std::uint64_t z = 0;
    int phase = 0;  // exponent of i, mod 4; valid rows keep it in {0, 2}
  };

  void rowsum(Row& h, const Row& i) const;
  int row_phase_product(const Row& a, const Row& b) const;

  int n_;
  std::vector<Row> rows_;  // 2n rows
};

}  // namespace trapkit
