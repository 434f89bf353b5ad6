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

#include <complex>
#include <cstdint>
#include <vector>

#include "trapkit/pauli.hpp"
#include "trapkit/random.hpp"

namespace trapkit {

inline constexpr int kStatevectorQubitCap = 16;

using Amplitude = std::complex<double>;

/** Dense pure-state simulator. Qubit q is bit q of the basis index. */
class Statevector {
 public:
  explicit Statevector(int num_qubits, int cap = kStatevectorQubitCap);

  int num_qubits() const { return n_; }
  std::uint64_t dim() const { return amps_.size(); }
  Amplitude amp(std::uint64_t basis) const { return amps_[basis]; }
  void set_amp(std::uint64_t basis, Amplitude a) { amps_[basis] = a; }

  void apply_h(int q);
  void apply_zrot(int q, double theta);  // diag(1, e^{i theta})
  void apply_pauli(int q, Pauli p);
  void apply_cz(int a, int b);
  /** Arbitrary single-qubit unitary [[u00,u01],[u10,u11]]. */
  void apply_1q(int q, Amplitude u00, Amplitude u01, Amplitude u10, Amplitude u11);

  double prob_zero(int q) const;
  /** Born-rule measurement in the computational basis; collapses the state. */
  int measure(int q, Rng& rng);
  /** Forces the given outcome and renormalises; throws if its probability is
   *  numerically zero. */
  void project(int q, int outcome);

  double norm() const;
  void normalise();

  /** State restricted to `keep` (in the given qubit order); all other qubits
   *  must already be collapsed onto computational basis states recorded in
   *  (fixed_mask, fixed_values). */
  Statevector reduced(const std::vector<int>& keep, std::uint64_t fixed_mask,
                      std::uint64_t fixed_values) const;

  /** |<a|b>|^2 */
  static double fidelity(const Statevector& a, const Statevector& b);

 private:
  int n_;
  std::vector<Amplitude> amps_;
};

}  // namespace trapkit
