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

#include "trapkit/traps.hpp"

namespace trapkit {

inline constexpr int kPredicateAnalysisCap = 12;
inline constexpr int kSimulationAnalysisCap = 8;

/** Symbolic or explicit family of Pauli deviations. Symbolic families are
 *  enumerated over XY-support classes: detection and insensitivity of the
 *  measured canvases built here depend only on the XY support, so one
 *  representative (X on every support vertex) stands for the class. */
struct DeviationSetSpec {
  enum class Family { Explicit, AllXY, AllPauli, ZOnly, IdentityOnly };
  Family family = Family::AllXY;
  std::vector<PauliDeviation> list;

  static DeviationSetSpec all_xy() { return {Family::AllXY, {}}; }
  static DeviationSetSpec all_pauli() { return {Family::AllPauli, {}}; }
  static DeviationSetSpec z_only() { return {Family::ZOnly, {}}; }
  static DeviationSetSpec identity_only() { return {Family::IdentityOnly, {}}; }
  static DeviationSetSpec explicit_list(std::vector<PauliDeviation> devs) {
    return {Family::Explicit, std::move(devs)};
  }
};

std::vector<PauliDeviation> deviation_representatives(const DeviationSetSpec& set,
                                                      int num_vertices,
                                                      int cap = kPredicateAnalysisCap);

/** Exact rejection probability of a canvas under a fixed Pauli deviation:
 *  the combinatorial predicate for standard/general traps, a stabiliser
 *  computation otherwise. */
Rational reject_probability(const TrappifiedCanvas& canvas, const PauliDeviation& deviation);

/** Predicate-only path (throws for custom canvases). */
Rational reject_probability_predicate(const TrappifiedCanvas& canvas,
                                      const PauliDeviation& deviation);

/** Stabiliser-simulation path; exact for Clifford canvases of any kind. */
Rational reject_probability_simulated(const TrappifiedCanvas& canvas,
                                      const PauliDeviation& deviation);

/** Weighted rejection probability over the scheme's canvases. */
Rational scheme_reject_probability(const TrappifiedScheme& scheme,
                                   const PauliDeviation& deviation);

struct RateFragment {
  Rational value;          // epsilon or delta
  Rational detection_rate; // 1 - epsilon (detection fragments only)
  PauliDeviation witness;  // deviation achieving the extremum
};

/** epsilon = 1 - min over the set of the weighted rejection probability. */
RateFragment scheme_epsilon(const TrappifiedScheme& scheme, const DeviationSetSpec& set,
                            int cap = kPredicateAnalysisCap);

/** delta = 1 - min over the set of the weighted acceptance probability. */
RateFragment scheme_delta(const TrappifiedScheme& scheme, const DeviationSetSpec& set,
                          int cap = kPredicateAnalysisCap);

/** The deviation minimising detection, with its acceptance probability. */
std::pair<PauliDeviation, Rational> optimal_attack(const TrappifiedScheme& scheme,
                                                   const DeviationSetSpec& set,
                                                   int cap = kPredicateAnalysisCap);

struct NuFragment {
  double nu = 0.0;
  PauliDeviation witness;
  // Pure-trap schemes cannot embed computations: nu degenerates to 0 when no
  // computation is requested and 1 otherwise.
  bool pure_trap_case = false;
};

/** nu over a deviation set for a computation embedded into each canvas:
 *  the weighted total variation between deviated and ideal classical output
 *  distributions, maximised over the set and the provided inputs. */
NuFragment scheme_nu(const TrappifiedScheme& scheme, const DeviationSetSpec& set,
                     const MeasurementPattern* computation,
                     const std::vector<ProductState>& inputs,
                     int cap = kSimulationAnalysisCap);

/** Total variation between deviated and ideal classical output
 *  distributions of a bare pattern (no trap machinery). */
double pattern_nu(const MeasurementPattern& pattern, const PatternInput& input,
                  const PauliDeviation& deviation);

/** Rejection probability of an embedded trappified pattern evaluated on the
 *  statevector back-end, usable with non-Clifford computation angles. Only
 *  the trap-output vertices are measured; their bases are correction-free,
 *  so the trap marginal is independent of the computation branches. */
double embedded_reject_probability(const TrappifiedPattern& embedded,
                                   const TrappifiedCanvas& canvas,
                                   const ProductState& computation_input,
                                   const PauliDeviation& deviation,
                                   int qubit_cap = kStatevectorQubitCap);

}  // namespace trapkit
