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

#include "trapkit/pauli.hpp"

#include "trapkit/errors.hpp"

namespace trapkit {

char pauli_char(Pauli p) {
  switch (p) {
    case Pauli::I: return 'I';
    case Pauli::X: return 'X';
    case Pauli::Y: return 'Y';
    case Pauli::Z: return 'Z';
  }
  return '?';
}

Pauli pauli_from_char(char c) {
  switch (c) {
    case 'I': return Pauli::I;
    case 'X': return Pauli::X;
    case 'Y': return Pauli::Y;
    case 'Z': return Pauli::Z;
    default: throw InvalidInput(std::string("unknown Pauli '") + c + "'");
  }
}

int pauli_multiply_phase(Pauli a, Pauli b, Pauli& result) {
  if (a == Pauli::I) {
    result = b;
    return 0;
  }
  if (b == Pauli::I) {
    result = a;
    return 0;
  }
  if (a == b) {
    result = Pauli::I;
    return 0;
  }
  // Cyclic: XY = iZ, YZ = iX, ZX = iY; reversed order picks up -i.
  auto idx = [](Pauli p) { return static_cast<int>(p); };  // X=1 Y=2 Z=3
  int ia = idx(a);
  int ib = idx(b);
  int ic = 6 - ia - ib;  // the remaining one of {1,2,3}
  result = static_cast<Pauli>(ic);
  bool forward = (ib - ia + 3) % 3 == 1;  // X->Y->Z->X
  return forward ? 1 : 3;
}

bool PauliWord::is_identity() const {
  for (Pauli p : ops_) {
    if (p != Pauli::I) return false;
  }
  return true;
}

PauliWord PauliWord::operator*(const PauliWord& other) const {
  if (size() != other.size()) throw InvalidInput("Pauli word size mismatch");
  PauliWord out(size());
  int phase = phase_ + other.phase_;
  for (int i = 0; i < size(); ++i) {
    Pauli r;
    phase += pauli_multiply_phase(ops_[i], other.ops_[i], r);
    out.ops_[i] = r;
  }
  out.phase_ = ((phase % 4) + 4) % 4;
  return out;
}

bool PauliWord::commutes_with(const PauliWord& other) const {
  if (size() != other.size()) throw InvalidInput("Pauli word size mismatch");
  int anticommuting_sites = 0;
  for (int i = 0; i < size(); ++i) {
    Pauli a = ops_[i];
    Pauli b = other.ops_[i];
    if (a != Pauli::I && b != Pauli::I && a != b) ++anticommuting_sites;
  }
  return anticommuting_sites % 2 == 0;
}

std::string PauliWord::str() const {
  static const char* prefix[] = {"+", "+i", "-", "-i"};
  std::string out = prefix[phase_];
  for (Pauli p : ops_) out += pauli_char(p);
  return out;
}

std::uint64_t PauliDeviation::xy_support() const {
  std::uint64_t mask = 0;
  for (auto [v, p] : support) {
    if (p == Pauli::X || p == Pauli::Y) mask |= 1ULL << v;
  }
  return mask;
}

std::uint64_t PauliDeviation::full_support() const {
  std::uint64_t mask = 0;
  for (auto [v, p] : support) {
    if (p != Pauli::I) mask |= 1ULL << v;
  }
  return mask;
}

}  // namespace trapkit
