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

#include <optional>
#include <string>
#include <vector>

#include "trapkit/mbqc.hpp"

namespace trapkit {

/** Conjunction of parity checks over trap outputs: the canvas rejects iff
 *  some listed parity is odd. */
struct DecisionFn {
  std::vector<std::vector<int>> parity_checks;

  bool rejects(const std::map<int, int>& outcomes) const;
};

enum class CanvasKind { Standard, General, Custom };

/** A partial pattern with a fixed product input and a decision function.
 *  Vertices outside V_T are left unspecified; they are filled in either by
 *  an embedded computation or with |+> preparations and random angles at
 *  instantiation time. */
struct TrappifiedCanvas {
  OpenGraph graph;          // host graph (outputs = scheme-level O)
  std::uint64_t vt = 0;     // V_T
  std::uint64_t it = 0;     // I_T (subset of V_T)
  std::uint64_t ot = 0;     // O_T: vertices whose outcomes the decision reads
  ProductState sigma;       // preparation on I_T
  std::map<int, Angle> angles;  // on measured V_T vertices
  Flow partial_flow;
  DecisionFn decision;
  // Honest trap-outcome distribution descriptor. Constructors only emit
  // deterministic-accept canvases; non-deterministic descriptors are
  // represented but no constructor produces them.
  bool deterministic_accept = true;

  CanvasKind kind = CanvasKind::Custom;
  std::uint64_t h_mask = 0;  // defining vertex set for standard/general traps

  bool rejects(const std::map<int, int>& decoded_outcomes) const {
    return decision.rejects(decoded_outcomes);
  }
};

/** S^i = X_i prod_{j in N(i)} Z_j, the vertex stabiliser of the graph
 *  state. */
PauliWord vertex_stabiliser(const OpenGraph& g, int i);

/** Tensor-product +1 eigenstate of a Hermitian Pauli word: per-site
 *  eigenstates with the sign absorbed at the first non-identity site.
 *  Identity sites default to |+>. Throws for words squaring to -I. */
ProductState prepare_stabiliser_product(const PauliWord& word);

/** True iff the words agree or are identity at every site, i.e. they can be
 *  prepared simultaneously as one product state. */
bool check_overlap_condition(const std::vector<PauliWord>& words);

/** Standard trap on an independent set H: |+> on H, |0> dummies on N(H),
 *  X measurements, one singleton parity check per trap qubit. */
TrappifiedCanvas build_standard_trap(const OpenGraph& g, std::uint64_t h);

/** General parity trap on an arbitrary non-empty H: product preparation of
 *  the +1 eigenstate of prod_{i in H} S^i, all vertices X-measured, single
 *  parity check over H. Covers the whole graph (pure trap). */
TrappifiedCanvas build_general_trap(const OpenGraph& g, std::uint64_t h);

/** The trivial always-accepting test: all |+>, X-measured, no checks. */
TrappifiedCanvas build_trivial_canvas(const OpenGraph& g);

enum class EmbeddingKind { None, DummyIsolated };

/** A samplable family of blind-compatible canvases plus an embedding rule. */
struct TrappifiedScheme {
  OpenGraph graph;
  std::vector<TrappifiedCanvas> canvases;
  std::vector<Rational> weights;  // non-negative, sum exactly 1
  EmbeddingKind embedding = EmbeddingKind::None;

  std::size_t sample_index(Rng& rng) const;
};

/** Throws unless the canvases are mutually blind-compatible and the weights
 *  form a distribution. */
void validate_scheme(const TrappifiedScheme& scheme);

TrappifiedScheme single_canvas_scheme(TrappifiedCanvas canvas);

/** Standard-trap scheme from a weighted family of independent sets. */
TrappifiedScheme standard_trap_scheme(const OpenGraph& g, const FractionalColouring& family);

/** Uniform choice among all 2^|V| subsets of V; the empty subset is the
 *  trivial always-accepting test. Every XY deviation flips an odd parity for
 *  exactly half of all subsets, so the scheme 1/2-detects them exactly. */
TrappifiedScheme uniform_general_trap_scheme(const OpenGraph& g);

/** Two-stage mixture of blind-compatible schemes (outer distribution p). */
TrappifiedScheme compose_schemes(const std::vector<TrappifiedScheme>& schemes,
                                 const std::vector<Rational>& p);

/** A canvas instantiated for execution: the pattern plus its fixed
 *  preparations (trap sigma and isolation dummies). For embedded patterns,
 *  vertex_map sends computation vertices to host vertices, so per-session
 *  computation inputs can be merged into preps. */
struct TrappifiedPattern {
  MeasurementPattern pattern;
  ProductState preps;
  std::uint64_t computation_vertices = 0;
  std::vector<int> vertex_map;
};

/** Instantiates a canvas as a runnable pattern. Unspecified vertices are
 *  prepared |+> and measured at a uniformly random angle drawn from rng;
 *  passing nullptr pins them to angle 0 for exact Clifford analysis. */
TrappifiedPattern canvas_pattern(const TrappifiedCanvas& canvas, Rng* rng);

/** Single 3x3-block standard-trap canvas on a rows x cols cluster: centre
 *  |+>, eight |0> dummies, block X-measured. The block's top-left corner
 *  sits at (block_row, block_col). */
TrappifiedCanvas cluster_trap_canvas(int rows, int cols, bool cylinder, int block_row,
                                     int block_col);

/** Fills the free rows of a cluster trap canvas with a computation defined
 *  on the (rows-3) x cols cluster, isolating it with |0> dummies; random
 *  angles elsewhere. Returns nullopt when the computation does not fit. */
std::optional<TrappifiedPattern> embed_dummy_isolated(const MeasurementPattern& computation,
                                                      const TrappifiedCanvas& canvas,
                                                      Rng* rng);

/** Dependency scan used to confirm embeddings are proper: no precedence
 *  constraint or correction set of the pattern touches the trap vertices. */
bool embedding_is_proper(const MeasurementPattern& pattern, std::uint64_t vt);

}  // namespace trapkit
