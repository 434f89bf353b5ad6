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

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "trapkit/angle.hpp"
#include "trapkit/graph.hpp"
#include "trapkit/pauli.hpp"
#include "trapkit/random.hpp"
#include "trapkit/statevector.hpp"

namespace trapkit {

/** Single-qubit preparation tag. Every state the protocols prepare is either
 *  a computational eigenstate or lies in the X-Y plane on the pi/4 grid, so
 *  tags are closed under the one-time-pad encryption Z(theta) X^a. */
class Prep {
 public:
  enum class Kind { Zero, One, Plus, Minus, PlusI, MinusI, PlusTheta };

  Prep() = default;

  static Prep zero() { return Prep(Kind::Zero, Angle(0)); }
  static Prep one() { return Prep(Kind::One, Angle(0)); }
  static Prep plus() { return Prep(Kind::Plus, Angle(0)); }
  static Prep minus() { return Prep(Kind::Minus, Angle(4)); }
  static Prep plus_i() { return Prep(Kind::PlusI, Angle(2)); }
  static Prep minus_i() { return Prep(Kind::MinusI, Angle(6)); }
  static Prep plus_theta(Angle theta);

  Kind kind() const { return kind_; }
  bool is_z_eigenstate() const { return kind_ == Kind::Zero || kind_ == Kind::One; }
  bool is_xy_plane() const { return !is_z_eigenstate(); }
  /** XY-plane angle; only valid when is_xy_plane(). */
  Angle xy_angle() const { return theta_; }
  /** Representable on the stabiliser back-end. */
  bool is_clifford() const;

  /** Z(theta) X^a applied to this state (global phase dropped). */
  Prep encrypted(Angle theta, int a) const;

  std::pair<Amplitude, Amplitude> amplitudes() const;

  std::string str() const;
  static Prep parse(const std::string& text);

  bool operator==(const Prep&) const = default;

 private:
  Prep(Kind kind, Angle theta) : kind_(kind), theta_(theta) {}

  Kind kind_ = Kind::Plus;
  Angle theta_{};
};

/** Per-vertex preparation tags. */
using ProductState = std::map<int, Prep>;

/** Flow function with optional extra precedence constraints. Vertices whose
 *  outcomes require no corrections (e.g. trap qubits) are simply absent from
 *  the domain. */
struct Flow {
  std::map<int, int> f;

  std::optional<int> at(int v) const {
    auto it = f.find(v);
    return it == f.end() ? std::nullopt : std::optional<int>(it->second);
  }
  /** X-dependency set of i: the vertices i corrects for. */
  std::vector<int> s_x(int i) const;
  /** Z-dependency set of i (excluding i itself). */
  std::vector<int> s_z(int i, const OpenGraph& g) const;
};

struct MeasurementPattern {
  OpenGraph graph;
  std::map<int, Angle> angles;  // defined exactly on measured vertices
  Flow flow;
  std::vector<std::pair<int, int>> extra_order;
  /** Measured vertices whose decoded outcomes form the classical result. */
  std::uint64_t classical_outputs = 0;
  /** Vertices that receive no outcome corrections (trap qubits, dummies,
   *  padding). They are skipped by the flow's ordering conditions, which is
   *  what keeps embeddings free of dependencies on trap vertices. */
  std::uint64_t correction_free = 0;

  std::uint64_t measured_mask() const { return graph.vertex_mask() & ~graph.outputs; }
  std::vector<int> output_vertices() const;

  /** Correction sets of v, honouring correction_free. */
  std::vector<int> s_x(int v) const;
  std::vector<int> s_z(int v) const;

  /** Precedence constraints induced by the flow conditions plus extra_order. */
  std::vector<std::pair<int, int>> order_constraints() const;
  /** Total measurement order (topological, lowest vertex first). */
  std::vector<int> measurement_order() const;
};

/** Empty result means the flow is valid; otherwise one message per violated
 *  condition. */
std::vector<std::string> validate_flow(const MeasurementPattern& pattern);

/** Outcome source: a seeded generator for Born sampling, or forced outcomes
 *  for branch-exhaustive tests. Forcing a deterministic measurement to the
 *  wrong value is an error. */
struct OutcomeSource {
  Rng* rng = nullptr;
  const std::map<int, int>* forced = nullptr;

  static OutcomeSource sample(Rng& rng) { return {&rng, nullptr}; }
  static OutcomeSource force(const std::map<int, int>& outcomes) {
    return {nullptr, &outcomes};
  }
};

/** Pattern input: preparation tags for input vertices (vertices without a
 *  tag are prepared |+>), optionally replaced by an entangled state over a
 *  listed subset of vertices. */
struct PatternInput {
  ProductState preps;
  std::vector<int> entangled_vertices;
  std::vector<Amplitude> entangled_amps;  // size 2^k, qubit j = bit j

  static PatternInput product(ProductState p) { return {std::move(p), {}, {}}; }
};

struct PatternRunResult {
  std::map<int, int> outcomes;      // raw outcome per measured vertex
  std::vector<int> output_qubits;   // vertex order of output_state
  Statevector output_state{0};      // corrected state on O (dim 1 when O empty)
  std::uint64_t classical_result = 0;  // outcomes packed over classical_outputs
};

/** Statevector execution of a pattern: entangle, measure adaptively with
 *  flow corrections, correct outputs. The deviation acts in the
 *  computational frame: X/Y on a measured vertex flip its outcome, Z is
 *  inert; on output vertices Paulis act before the final corrections. */
PatternRunResult run_pattern(const MeasurementPattern& pattern, const PatternInput& input,
                             OutcomeSource outcomes, const PauliDeviation& deviation = {},
                             int qubit_cap = kStatevectorQubitCap);

/** Stabiliser-tableau execution; requires Clifford preparations and angles.
 *  The pattern must have no quantum outputs. */
std::map<int, int> run_clifford_pattern(const MeasurementPattern& pattern,
                                        const ProductState& input, OutcomeSource outcomes,
                                        const PauliDeviation& deviation = {});

/** Exact distribution of the classical result by exhausting measurement
 *  branches. Keys are outcome bit-packs over `classical_outputs`. */
std::map<std::uint64_t, double> output_distribution(const MeasurementPattern& pattern,
                                                    const PatternInput& input,
                                                    const PauliDeviation& deviation = {},
                                                    int qubit_cap = kStatevectorQubitCap);

/** Builds the rows x cols grid, optionally wrapping the row direction into a
 *  cylinder. Vertex (row r, column c) has index c*rows + r. */
OpenGraph cluster_graph(int rows, int cols, bool cylinder = false);
inline int cluster_vertex(int rows, int r, int c) { return c * rows + r; }

}  // namespace trapkit
