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

struct CompilerParams {
  int n = 0;  // total rounds
  int d = 0;  // computation rounds
  int s = 0;  // test rounds
  int w = 0;  // rejection threshold: reject iff failed tests >= w
  double c = 0.0;  // bounded error of the computation

  void validate() const;
};

enum class CompiledKind { Amplified, Bqp, Parallel };

/** Round layout of one compiled execution: which positions run tests and
 *  which canvas each drew. Sampling is lazy; the canvas space is never
 *  materialised. */
struct RoundAssignment {
  std::vector<int> test_rounds;              // sorted, size s
  std::map<int, std::size_t> canvas_choice;  // test position -> canvas index
  bool is_test(int round) const { return canvas_choice.count(round) != 0; }
};

struct CompiledScheme {
  TrappifiedScheme base;
  CompilerParams params;
  CompiledKind kind = CompiledKind::Amplified;
  bool majority_vote = false;

  /** Uniform size-s test set plus independent canvas draws. */
  RoundAssignment sample_assignment(Rng& rng) const;
  /** Parallel repetition: one canvas draw per round, computation everywhere. */
  std::vector<std::size_t> sample_parallel(Rng& rng) const;

  bool rejects(int failed_tests) const { return failed_tests >= params.w; }
  /** |canvas space| = C(n,s) * |canvases|^s. */
  BigInt canvas_space_size() const;
};

CompiledScheme compile_amplified(TrappifiedScheme base, CompilerParams params);
/** Adds the bitwise-majority decoder over computation rounds. */
CompiledScheme compile_bqp(TrappifiedScheme base, CompilerParams params);
/** n independent draws of a base scheme that embeds the computation itself. */
CompiledScheme compile_parallel(TrappifiedScheme base, int n, int w);

/** Bitwise majority of equal-length round outputs. Ties (even counts) are
 *  reported as failures rather than resolved arbitrarily. */
std::optional<std::uint64_t> majority_vote(const std::vector<std::uint64_t>& outputs,
                                           int bits);

struct BoundInputs {
  double eps = 0.0;    // base detection error
  double delta = 0.0;  // base insensitivity error
  double nu = 0.0;     // base correctness error (parallel bounds)
  double k_eps = 0.0;
  double k_delta = 0.0;
  double k_nu = 0.0;
  double p_delta = 0.0;  // per-round noise probability
};

struct ChiBound {
  double value = 1.0;
  double chi = 0.0;  // minimiser
};

struct AmplifiedBounds {
  ChiBound eps_prime;
  ChiBound delta_prime;
  ChiBound nu_prime;
  /** Variant with the factor-2 placement used by the final display of the
   *  correctness proof; recorded for reference, not used as the bound. */
  double nu_prime_proof_display = 1.0;
  double p_delta_prime = 1.0;
};

/** Closed-form amplification bounds, each minimised over chi on its stated
 *  interval (dense grid + golden-section refinement). Throws Inadmissible
 *  naming the violated inequality. */
AmplifiedBounds bounds_amplified(const BoundInputs& in, const CompilerParams& params);

/** The majority-vote correctness bound on its own; needs only
 *  k_nu/n < (1-2c)/(2-2c). */
ChiBound correctness_bound(double k_nu, int n, int d, double c);

struct ParallelBounds {
  double eps = 1.0;
  double delta = 1.0;
  double nu = 1.0;
};

/** Single-exponential Hoeffding forms of the parallel-repetition bounds;
 *  f is the decoder's required number of correct rounds. */
ParallelBounds bounds_parallel(const BoundInputs& in, int n, int w, double f);

struct MixtureParams {
  Rational eps;
  Rational delta;
  Rational nu;
};

/** Parameters of the computation/test mixture scheme: eps = 1-(1-eps)s/n,
 *  delta = s delta/n, nu = 1-(1-c)d/n. */
MixtureParams mixture_parameters(const Rational& eps, const Rational& delta,
                                 const Rational& c, int d, int s);

// Exact tail masses used to certify that every Hoeffding term above is a
// true upper bound.
inline constexpr long kTailExactCap = 10000;

struct Hypergeometric {
  long population = 0;  // n
  long successes = 0;   // K
  long draws = 0;       // s
};

struct BinomialDist {
  long trials = 0;
  Rational p;
};

Rational hypergeometric_tail_le(const Hypergeometric& h, long x);
Rational hypergeometric_tail_ge(const Hypergeometric& h, long x);
Rational binomial_tail_le(const BinomialDist& b, long x);
Rational binomial_tail_ge(const BinomialDist& b, long x);

}  // namespace trapkit
