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

#include <vector>

#include "trapkit/rational.hpp"

namespace trapkit {

struct LpSolution {
  Rational value;
  std::vector<Rational> x;     // primal solution
  std::vector<Rational> dual;  // dual prices, one per constraint
  // True when a non-basic column with zero reduced cost exists at the
  // optimum, i.e. another optimal vertex exists.
  bool degenerate_optimum = false;
};

/** Solves max c'x subject to Ax <= b, x >= 0 with b >= 0, by the primal
 *  simplex method over exact rationals with Bland's anti-cycling rule.
 *  The all-slack basis is feasible, so no phase-one is needed. */
LpSolution simplex_max(const std::vector<std::vector<Rational>>& a,
                       const std::vector<Rational>& b,
                       const std::vector<Rational>& c);

}  // namespace trapkit
