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

#include <cstdint>
#include <utility>
#include <vector>

#include "trapkit/rational.hpp"

namespace trapkit {

/** Default cap for exhaustive operations (independent-set enumeration,
 *  exact colourings). Overridable per call. */
inline constexpr int kGraphEnumerationCap = 24;

/** Hard representation limit; vertex subsets are 64-bit masks. */
inline constexpr int kGraphMaskLimit = 64;

/** An undirected graph with distinguished input and output vertex sets.
 *  Vertices are dense indices 0..n-1 internally; `ids` keeps the external
 *  labels for file round-trips. Subsets of vertices are bitmasks. */
class OpenGraph {
 public:
  OpenGraph() = default;
  explicit OpenGraph(int n);

  static OpenGraph from_edges(int n, const std::vector<std::pair<int, int>>& edges);

  int size() const { return static_cast<int>(adj_.size()); }
  void add_edge(int u, int v);
  bool has_edge(int u, int v) const;
  std::uint64_t neighbours(int v) const { return adj_[v]; }
  int degree(int v) const;
  std::uint64_t vertex_mask() const;
  std::vector<std::pair<int, int>> edge_list() const;

  /** Union of neighbourhoods of the vertices in `set`, minus `set`. */
  std::uint64_t open_neighbourhood(std::uint64_t set) const;

  bool is_independent(std::uint64_t set) const;
  bool is_connected() const;

  bool operator==(const OpenGraph& other) const;

  std::vector<int> ids;  // external labels; defaults to 0..n-1
  std::uint64_t inputs = 0;
  std::uint64_t outputs = 0;

 private:
  std::vector<std::uint64_t> adj_;
};

struct IndependentSet {
  std::uint64_t members = 0;
  int size() const;
};

/** A weighted family of independent sets. Weights are non-negative and sum
 *  to at most 1; normalising them gives a sampling distribution. */
struct FractionalColouring {
  std::vector<std::uint64_t> sets;
  std::vector<Rational> weights;
};

/** All non-empty independent sets with at most `max_size` vertices.
 *  Throws CapExceeded above the enumeration cap. */
std::vector<IndependentSet> enumerate_independent_sets(const OpenGraph& g,
                                                       int max_size = kGraphMaskLimit,
                                                       int cap = kGraphEnumerationCap);

/** Exact chromatic number by branch-and-bound with a greedy upper bound and
 *  clique lower bound. */
int chromatic_number(const OpenGraph& g, int cap = kGraphEnumerationCap);

/** Exact clique number. */
int clique_number(const OpenGraph& g, int cap = kGraphEnumerationCap);

struct FractionalChromaticResult {
  Rational value;
  // Optimal fractional colouring: total weight == value, every vertex
  // covered with weight >= 1.
  FractionalColouring colouring;
  // Optimal fractional clique (dual): per-vertex weights, at most 1 on every
  // independent set, summing to value.
  std::vector<Rational> clique_weights;
};

/** Exact fractional chromatic number via the packing/covering LP pair over
 *  all independent sets. Primal and dual certificates are returned; their
 *  values agree by construction of the simplex solution. */
FractionalChromaticResult fractional_chromatic_number(const OpenGraph& g,
                                                      int cap = kGraphEnumerationCap);

/** All connected graphs with 1..max_n vertices, one representative per
 *  isomorphism class. Intended for exhaustive small-instance checks. */
std::vector<OpenGraph> connected_graphs_up_to(int max_n);

// Convenience constructions used throughout tests and tools.
OpenGraph cycle_graph(int n);
OpenGraph complete_graph(int n);
OpenGraph path_graph(int n);
OpenGraph edgeless_graph(int n);
OpenGraph petersen_graph();

}  // namespace trapkit
