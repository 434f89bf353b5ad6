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

#include <functional>
#include <set>

#include "trapkit/compiler.hpp"
#include "trapkit/stats.hpp"
#include "trapkit/ubqc.hpp"

namespace trapkit {

struct AdversaryStrategy {
  enum class Kind { Honest, Fixed, Distribution, Noisy };
  Kind kind = Kind::Honest;
  PauliDeviation fixed;
  std::vector<std::pair<PauliDeviation, Rational>> distribution;
  Rational p_noise;                       // per-draw firing probability
  std::vector<PauliDeviation> noise_set;  // sampled uniformly when firing

  static AdversaryStrategy honest() { return {}; }
  static AdversaryStrategy make_fixed(PauliDeviation dev);
  static AdversaryStrategy make_distribution(
      std::vector<std::pair<PauliDeviation, Rational>> items);
  static AdversaryStrategy make_noisy(Rational p, std::vector<PauliDeviation> set);

  /** One deviation draw; called once per session for base schemes and once
   *  per round for compiled ones. */
  PauliDeviation sample(Rng& rng) const;
};

struct SessionResult {
  bool accepted = false;
  std::optional<std::uint64_t> output;  // set iff accepted and decoding succeeded
  bool decode_failed = false;           // majority tie (even round counts)
  int failed_tests = 0;
  std::uint64_t seed = 0;
};

/** A classical-output computation to delegate: its pattern, input
 *  preparations, and where to read the answer. */
struct Computation {
  MeasurementPattern pattern;
  ProductState input;

  int output_bits() const;
};

/** Protocol run on a base trappified scheme: samples a canvas, embeds the
 *  computation when the scheme supports it (computation == nullptr runs a
 *  pure test round), executes blindly with the adversary's deviation, and
 *  evaluates the decision function on the decoded outcomes. */
SessionResult run_protocol3(const TrappifiedScheme& scheme, const Computation* computation,
                            const AdversaryStrategy& adversary, std::uint64_t seed);

enum class RoundBackend {
  Blind,     // every round is a full blind session on the statevector
  Predicate  // per-round reject bits from the exact canvas predicates
};

struct CompiledRunOptions {
  RoundBackend backend = RoundBackend::Blind;
  const Computation* computation = nullptr;  // required by Blind computation rounds
  /** Predicate mode: per-computation-round probability of flipping the
   *  reference answer, standing in for the bounded error c. */
  double artificial_flip = 0.0;
  std::uint64_t reference_output = 0;  // Predicate-mode correct answer
};

SessionResult run_protocol3_compiled(const CompiledScheme& scheme,
                                     const AdversaryStrategy& adversary, std::uint64_t seed,
                                     const CompiledRunOptions& options);

using SessionRunner = std::function<SessionResult(std::uint64_t seed)>;

struct RateEstimate {
  Interval accept;
  Interval corrupt_and_accept;  // accepted with an output outside the correct set
  std::uint64_t trials = 0;
};

/** Wilson 95% interval estimates over seeded trials; the per-trial seed
 *  stream is independent of the number of worker threads. */
RateEstimate estimate_rates(const SessionRunner& runner, std::uint64_t trials,
                            std::uint64_t root_seed,
                            const std::set<std::uint64_t>& correct_outputs, int jobs = 1);

struct DistinguishResult {
  Interval accept_real;
  Interval accept_ideal;
  /** Total variation between the (verdict, output) distributions. */
  double advantage = 0.0;
  /** Sampling-noise scale: 3 sigma_hat of the advantage estimator; an
   *  advantage below noise_floor is consistent with zero. */
  double noise_floor = 0.0;
  double tv_outputs_on_accept = 0.0;
};

/** Real protocol with computation A versus the simulator driving the same
 *  trap machinery with an unrelated computation while the ideal resource
 *  evaluates A exactly. */
DistinguishResult distinguishing_game(const TrappifiedScheme& scheme, const Computation& a,
                                      const Computation& c_empty,
                                      const AdversaryStrategy& adversary,
                                      std::uint64_t trials, std::uint64_t root_seed,
                                      int jobs = 1);

}  // namespace trapkit
