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

#include "trapkit/tableau.hpp"

#include <bit>

#include "trapkit/errors.hpp"

namespace trapkit {

// Row convention: the stored operator is i^phase * prod_q X_q^{x_q} Z_q^{z_q}.
// A site with x=z=1 therefore contributes XZ = -iY; the sign of the Hermitian
// word with literal Y's is i^(phase - #Y).

Tableau::Tableau(int num_qubits) : n_(num_qubits) {
  if (num_qubits < 1 || num_qubits > 64) throw CapExceeded("tableau supports 1..64 qubits");
  rows_.assign(2 * n_, Row{});
  for (int i = 0; i < n_; ++i) {
    rows_[i].x = 1ULL << i;        // destabiliser X_i
    rows_[n_ + i].z = 1ULL << i;   // stabiliser Z_i
  }
}

void Tableau::apply_h(int q) {
  const std::uint64_t bit = 1ULL << q;
  for (auto& row : rows_) {
    bool x = row.x & bit;
    bool z = row.z & bit;
    if (x && z) row.phase = (row.phase + 2) % 4;
    if (x != z) {
      row.x ^= bit;
      row.z ^= bit;
    }
  }
}

void Tableau::apply_s(int q) {
  const std::uint64_t bit = 1ULL << q;
  for (auto& row : rows_) {
    if (row.x & bit) {
      row.phase = (row.phase + 1) % 4;
      row.z ^= bit;
    }
  }
}

void Tableau::apply_sdg(int q) {
  const std::uint64_t bit = 1ULL << q;
  for (auto& row : rows_) {
    if (row.x & bit) {
      row.phase = (row.phase + 3) % 4;
      row.z ^= bit;
    }
  }
}

void Tableau::apply_x(int q) {
  const std::uint64_t bit = 1ULL << q;
  for (auto& row : rows_) {
    if (row.z & bit) row.phase = (row.phase + 2) % 4;
  }
}

void Tableau::apply_z(int q) {
  const std::uint64_t bit = 1ULL << q;
  for (auto& row : rows_) {
    if (row.x & bit) row.phase = (row.phase + 2) % 4;
  }
}

void Tableau::apply_y(int q) {
  const std::uint64_t bit = 1ULL << q;
  for (auto& row : rows_) {
    bool x = row.x & bit;
    bool z = row.z & bit;
    if (x != z) row.phase = (row.phase + 2) % 4;
  }
}

void Tableau::apply_pauli(int q, Pauli p) {
  switch (p) {
    case Pauli::I: return;
    case Pauli::X: apply_x(q); return;
    case Pauli::Y: apply_y(q); return;
    case Pauli::Z: apply_z(q); return;
  }
}

void Tableau::apply_cnot(int control, int target) {
  const std::uint64_t cbit = 1ULL << control;
  const std::uint64_t tbit = 1ULL << target;
  for (auto& row : rows_) {
    if (row.x & cbit) row.x ^= tbit;
    if (row.z & tbit) row.z ^= cbit;
  }
}

void Tableau::apply_cz(int a, int b) {
  const std::uint64_t abit = 1ULL << a;
  const std::uint64_t bbit = 1ULL << b;
  for (auto& row : rows_) {
    bool xa = row.x & abit;
    bool xb = row.x & bbit;
    if (xa && xb) row.phase = (row.phase + 2) % 4;
    if (xa) row.z ^= bbit;
    if (xb) row.z ^= abit;
  }
}

int Tableau::row_phase_product(const Row& a, const Row& b) const {
  // (i^pa X^xa Z^za)(i^pb X^xb Z^zb): commuting Z^za past X^xb costs
  // (-1)^(za & xb).
  return (a.phase + b.phase + 2 * (std::popcount(a.z & b.x) % 2)) % 4;
}

void Tableau::rowsum(Row& h, const Row& i) const {
  h.phase = row_phase_product(h, i);
  h.x ^= i.x;
  h.z ^= i.z;
}

namespace {

bool rows_anticommute(std::uint64_t ax, std::uint64_t az, std::uint64_t bx,
                      std::uint64_t bz) {
  return ((std::popcount(ax & bz) + std::popcount(az & bx)) % 2) != 0;
}

}  // namespace

int Tableau::measure_z(int q, Rng* rng, std::optional<int> forced) {
  PauliWord word(n_);
  word.set(q, Pauli::Z);
  return measure_pauli(word, rng, forced);
}

std::optional<int> Tableau::deterministic_sign(const PauliWord& word) const {
  if (word.size() != n_) throw InvalidInput("pauli word size mismatch");
  if (!word.is_hermitian()) throw InvalidInput("measuring a non-Hermitian word");
  Row target{};
  int y_count = 0;
  for (int qq = 0; qq < n_; ++qq) {
    Pauli p = word.at(qq);
    if (p == Pauli::X || p == Pauli::Y) target.x |= 1ULL << qq;
    if (p == Pauli::Z || p == Pauli::Y) target.z |= 1ULL << qq;
    if (p == Pauli::Y) ++y_count;
  }
  target.phase = (word.phase() + y_count) % 4;

  for (int i = n_; i < 2 * n_; ++i) {
    if (rows_anticommute(rows_[i].x, rows_[i].z, target.x, target.z)) {
      return std::nullopt;
    }
  }
  // The word commutes with the full stabiliser group, so it equals a +/-
  // product of stabiliser rows; the rows to multiply are flagged by
  // anticommutation with the matching destabilisers.
  Row scratch{};
  for (int i = 0; i < n_; ++i) {
    if (rows_anticommute(rows_[i].x, rows_[i].z, target.x, target.z)) {
      rowsum(scratch, rows_[n_ + i]);
    }
  }
  if (scratch.x != target.x || scratch.z != target.z) {
    throw Error("tableau invariant broken: commuting word not in stabiliser span");
  }
  int diff = (scratch.phase - target.phase + 4) % 4;
  if (diff == 0) return 1;
  if (diff == 2) return -1;
  throw Error("tableau invariant broken: imaginary relative phase");
}

int Tableau::measure_pauli(const PauliWord& word, Rng* rng, std::optional<int> forced) {
  if (word.size() != n_) throw InvalidInput("pauli word size mismatch");
  if (!word.is_hermitian()) throw InvalidInput("measuring a non-Hermitian word");
  Row target{};
  int y_count = 0;
  for (int qq = 0; qq < n_; ++qq) {
    Pauli p = word.at(qq);
    if (p == Pauli::X || p == Pauli::Y) target.x |= 1ULL << qq;
    if (p == Pauli::Z || p == Pauli::Y) target.z |= 1ULL << qq;
    if (p == Pauli::Y) ++y_count;
  }
  target.phase = (word.phase() + y_count) % 4;

  int pivot = -1;
  for (int i = n_; i < 2 * n_; ++i) {
    if (rows_anticommute(rows_[i].x, rows_[i].z, target.x, target.z)) {
      pivot = i;
      break;
    }
  }

  if (pivot >= 0) {
    // Random outcome.
    int outcome;
    if (forced.has_value()) {
      outcome = *forced;
    } else if (rng != nullptr) {
      outcome = random_bit(*rng);
    } else {
      throw InvalidInput("random measurement without an outcome source");
    }
    for (int i = 0; i < 2 * n_; ++i) {
      if (i == pivot) continue;
      if (rows_anticommute(rows_[i].x, rows_[i].z, target.x, target.z)) {
        rowsum(rows_[i], rows_[pivot]);
      }
    }
    rows_[pivot - n_] = rows_[pivot];
    Row replacement = target;
    if (outcome == 1) replacement.phase = (replacement.phase + 2) % 4;
    rows_[pivot] = replacement;
    return outcome;
  }

  auto sign = deterministic_sign(word);
  int outcome = (*sign == 1) ? 0 : 1;
  if (forced.has_value() && *forced != outcome) {
    throw InvalidInput("forced outcome contradicts a deterministic measurement");
  }
  return outcome;
}

}  // namespace trapkit
