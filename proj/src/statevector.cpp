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

#include "trapkit/statevector.hpp"

#include <cmath>

#include "trapkit/errors.hpp"

namespace trapkit {

namespace {
constexpr double kSqrtHalf = 0.70710678118654752440;
}

Statevector::Statevector(int num_qubits, int cap) : n_(num_qubits) {
  if (num_qubits < 0 || num_qubits > cap) {
    throw CapExceeded("statevector size " + std::to_string(num_qubits) +
                      " exceeds cap " + std::to_string(cap));
  }
  amps_.assign(1ULL << num_qubits, Amplitude(0.0, 0.0));
  amps_[0] = 1.0;
}

void Statevector::apply_h(int q) {
  const std::uint64_t bit = 1ULL << q;
  for (std::uint64_t i = 0; i < dim(); ++i) {
    if (i & bit) continue;
    Amplitude a0 = amps_[i];
    Amplitude a1 = amps_[i | bit];
    amps_[i] = (a0 + a1) * kSqrtHalf;
    amps_[i | bit] = (a0 - a1) * kSqrtHalf;
  }
}

void Statevector::apply_zrot(int q, double theta) {
  const std::uint64_t bit = 1ULL << q;
  const Amplitude phase = std::polar(1.0, theta);
  for (std::uint64_t i = 0; i < dim(); ++i) {
    if (i & bit) amps_[i] *= phase;
  }
}

void Statevector::apply_pauli(int q, Pauli p) {
  const std::uint64_t bit = 1ULL << q;
  switch (p) {
    case Pauli::I:
      return;
    case Pauli::X:
      for (std::uint64_t i = 0; i < dim(); ++i) {
        if (!(i & bit)) std::swap(amps_[i], amps_[i | bit]);
      }
      return;
    case Pauli::Y:
      for (std::uint64_t i = 0; i < dim(); ++i) {
        if (!(i & bit)) {
          Amplitude a0 = amps_[i];
          amps_[i] = Amplitude(0, -1) * amps_[i | bit];
          amps_[i | bit] = Amplitude(0, 1) * a0;
        }
      }
      return;
    case Pauli::Z:
      for (std::uint64_t i = 0; i < dim(); ++i) {
        if (i & bit) amps_[i] = -amps_[i];
      }
      return;
  }
}

void Statevector::apply_cz(int a, int b) {
  const std::uint64_t mask = (1ULL << a) | (1ULL << b);
  for (std::uint64_t i = 0; i < dim(); ++i) {
    if ((i & mask) == mask) amps_[i] = -amps_[i];
  }
}

void Statevector::apply_1q(int q, Amplitude u00, Amplitude u01, Amplitude u10,
                           Amplitude u11) {
  const std::uint64_t bit = 1ULL << q;
  for (std::uint64_t i = 0; i < dim(); ++i) {
    if (i & bit) continue;
    Amplitude a0 = amps_[i];
    Amplitude a1 = amps_[i | bit];
    amps_[i] = u00 * a0 + u01 * a1;
    amps_[i | bit] = u10 * a0 + u11 * a1;
  }
}

double Statevector::prob_zero(int q) const {
  const std::uint64_t bit = 1ULL << q;
  double p = 0.0;
  for (std::uint64_t i = 0; i < dim(); ++i) {
    if (!(i & bit)) p += std::norm(amps_[i]);
  }
  return p;
}

int Statevector::measure(int q, Rng& rng) {
  double p0 = prob_zero(q);
  int outcome = random_unit(rng) < p0 ? 0 : 1;
  project(q, outcome);
  return outcome;
}

void Statevector::project(int q, int outcome) {
  const std::uint64_t bit = 1ULL << q;
  double p = 0.0;
  for (std::uint64_t i = 0; i < dim(); ++i) {
    bool one = (i & bit) != 0;
    if (one == (outcome == 1)) {
      p += std::norm(amps_[i]);
    } else {
      amps_[i] = 0.0;
    }
  }
  if (p < 1e-12) throw InvalidInput("projection onto a zero-probability branch");
  double scale = 1.0 / std::sqrt(p);
  for (auto& a : amps_) a *= scale;
}

double Statevector::norm() const {
  double p = 0.0;
  for (const auto& a : amps_) p += std::norm(a);
  return std::sqrt(p);
}

void Statevector::normalise() {
  double scale = 1.0 / norm();
  for (auto& a : amps_) a *= scale;
}

Statevector Statevector::reduced(const std::vector<int>& keep, std::uint64_t fixed_mask,
                                 std::uint64_t fixed_values) const {
  Statevector out(static_cast<int>(keep.size()));
  for (std::uint64_t y = 0; y < out.dim(); ++y) {
    std::uint64_t basis = fixed_values & fixed_mask;
    for (std::size_t k = 0; k < keep.size(); ++k) {
      if ((y >> k) & 1ULL) basis |= 1ULL << keep[k];
    }
    out.amps_[y] = amps_[basis];
  }
  out.normalise();
  return out;
}

double Statevector::fidelity(const Statevector& a, const Statevector& b) {
  if (a.dim() != b.dim()) throw InvalidInput("fidelity: dimension mismatch");
  Amplitude overlap = 0.0;
  for (std::uint64_t i = 0; i < a.dim(); ++i) {
    overlap += std::conj(a.amps_[i]) * b.amps_[i];
  }
  return std::norm(overlap);
}

}  // namespace trapkit
