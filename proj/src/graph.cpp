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

#include "trapkit/graph.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <unordered_set>

#include "trapkit/errors.hpp"
#include "trapkit/simplex.hpp"

namespace trapkit {

OpenGraph::OpenGraph(int n) : adj_(n, 0) {
  if (n < 0 || n > kGraphMaskLimit) throw CapExceeded("graph size beyond 64 vertices");
  ids.resize(n);
  std::iota(ids.begin(), ids.end(), 0);
}

OpenGraph OpenGraph::from_edges(int n, const std::vector<std::pair<int, int>>& edges) {
  OpenGraph g(n);
  for (auto [u, v] : edges) g.add_edge(u, v);
  return g;
}

void OpenGraph::add_edge(int u, int v) {
  if (u == v) throw InvalidInput("self-loop");
  if (u < 0 || v < 0 || u >= size() || v >= size()) {
    throw InvalidInput("edge endpoint is not a declared vertex");
  }
  adj_[u] |= 1ULL << v;
  adj_[v] |= 1ULL << u;
}

bool OpenGraph::has_edge(int u, int v) const { return (adj_[u] >> v) & 1ULL; }

int OpenGraph::degree(int v) const { return std::popcount(adj_[v]); }

std::uint64_t OpenGraph::vertex_mask() const {
  return size() == 64 ? ~0ULL : (1ULL << size()) - 1;
}

std::vector<std::pair<int, int>> OpenGraph::edge_list() const {
  std::vector<std::pair<int, int>> edges;
  for (int u = 0; u < size(); ++u) {
    for (int v = u + 1; v < size(); ++v) {
      if (has_edge(u, v)) edges.emplace_back(u, v);
    }
  }
  return edges;
}

std::uint64_t OpenGraph::open_neighbourhood(std::uint64_t set) const {
  std::uint64_t nbh = 0;
  for (int v = 0; v < size(); ++v) {
    if ((set >> v) & 1ULL) nbh |= adj_[v];
  }
  return nbh & ~set;
}

bool OpenGraph::is_independent(std::uint64_t set) const {
  for (int v = 0; v < size(); ++v) {
    if (((set >> v) & 1ULL) && (adj_[v] & set)) return false;
  }
  return true;
}

bool OpenGraph::is_connected() const {
  if (size() == 0) return false;
  std::uint64_t seen = 1;
  std::uint64_t frontier = 1;
  while (frontier) {
    std::uint64_t next = 0;
    for (int v = 0; v < size(); ++v) {
      if ((frontier >> v) & 1ULL) next |= adj_[v];
    }
    frontier = next & ~seen;
    seen |= frontier;
  }
  return seen == vertex_mask();
}

bool OpenGraph::operator==(const OpenGraph& other) const {
  return adj_ == other.adj_ && inputs == other.inputs && outputs == other.outputs;
}

int IndependentSet::size() const { return std::popcount(members); }

std::vector<IndependentSet> enumerate_independent_sets(const OpenGraph& g, int max_size,
                                                       int cap) {
  if (g.size() > cap) throw CapExceeded("independent-set enumeration cap exceeded");
  std::vector<IndependentSet> out;
  // DFS over (chosen set, candidates still allowed); candidates shrink by the
  // chosen vertex's neighbourhood, so every emitted set is independent.
  struct Frame {
    std::uint64_t chosen;
    std::uint64_t allowed;
  };
  std::vector<Frame> stack{{0, g.vertex_mask()}};
  while (!stack.empty()) {
    auto [chosen, allowed] = stack.back();
    stack.pop_back();
    if (chosen) out.push_back({chosen});
    if (std::popcount(chosen) >= max_size) continue;
    while (allowed) {
      int v = std::countr_zero(allowed);
      allowed &= allowed - 1;
      stack.push_back({chosen | (1ULL << v), allowed & ~g.neighbours(v)});
    }
  }
  std::sort(out.begin(), out.end(), [](const IndependentSet& a, const IndependentSet& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a.members < b.members;
  });
  return out;
}

namespace {

int clique_search(const OpenGraph& g, std::uint64_t candidates, int current, int best) {
  best = std::max(best, current);
  while (candidates) {
    if (current + std::popcount(candidates) <= best) break;
    int v = std::countr_zero(candidates);
    candidates &= candidates - 1;
    best = clique_search(g, candidates & g.neighbours(v), current + 1, best);
  }
  return best;
}

int greedy_colouring(const OpenGraph& g, const std::vector<int>& order) {
  std::vector<int> colour(g.size(), -1);
  int used = 0;
  for (int v : order) {
    std::uint64_t taken = 0;
    for (int u = 0; u < g.size(); ++u) {
      if (g.has_edge(u, v) && colour[u] >= 0) taken |= 1ULL << colour[u];
    }
    int c = std::countr_one(taken);
    colour[v] = c;
    used = std::max(used, c + 1);
  }
  return used;
}

struct ColourBnB {
  const OpenGraph& g;
  std::vector<int> order;
  std::vector<int> colour;
  int best;

  bool feasible(int k) {
    std::fill(colour.begin(), colour.end(), -1);
    return assign(0, k);
  }

  bool assign(std::size_t pos, int k) {
    if (pos == order.size()) return true;
    int v = order[pos];
    std::uint64_t taken = 0;
    for (int u = 0; u < g.size(); ++u) {
      if (g.has_edge(u, v) && colour[u] >= 0) taken |= 1ULL << colour[u];
    }
    int max_new = 0;
    for (std::size_t i = 0; i < pos; ++i) max_new = std::max(max_new, colour[order[i]] + 1);
    int limit = std::min(k, max_new + 1);  // symmetry: first use of a colour
    for (int c = 0; c < limit; ++c) {
      if ((taken >> c) & 1ULL) continue;
      colour[v] = c;
      if (assign(pos + 1, k)) return true;
      colour[v] = -1;
    }
    return false;
  }
};

}  // namespace

int clique_number(const OpenGraph& g, int cap) {
  if (g.size() > cap) throw CapExceeded("clique computation cap exceeded");
  if (g.size() == 0) return 0;
  return clique_search(g, g.vertex_mask(), 0, 0);
}

int chromatic_number(const OpenGraph& g, int cap) {
  if (g.size() > cap) throw CapExceeded("chromatic computation cap exceeded");
  if (g.size() == 0) return 0;
  std::vector<int> order(g.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](int a, int b) { return g.degree(a) > g.degree(b); });
  int upper = greedy_colouring(g, order);
  int lower = clique_number(g, cap);
  ColourBnB bnb{g, order, std::vector<int>(g.size(), -1), upper};
  for (int k = lower; k < upper; ++k) {
    if (bnb.feasible(k)) return k;
  }
  return upper;
}

FractionalChromaticResult fractional_chromatic_number(const OpenGraph& g, int cap) {
  if (g.size() > cap) throw CapExceeded("fractional chromatic cap exceeded");
  if (g.size() == 0) throw InvalidInput("fractional chromatic of the null graph");
  auto sets = enumerate_independent_sets(g, g.size(), cap);
  // Packing LP: max sum_v x_v subject to, for every independent set S,
  // sum_{v in S} x_v <= 1. Its value is the fractional clique number; the
  // dual prices on the set constraints form a fractional colouring of equal
  // total weight.
  std::vector<std::vector<Rational>> a(sets.size(), std::vector<Rational>(g.size(), 0));
  for (std::size_t i = 0; i < sets.size(); ++i) {
    for (int v = 0; v < g.size(); ++v) {
      if ((sets[i].members >> v) & 1ULL) a[i][v] = 1;
    }
  }
  std::vector<Rational> b(sets.size(), Rational(1));
  std::vector<Rational> c(g.size(), Rational(1));
  LpSolution lp = simplex_max(a, b, c);

  FractionalChromaticResult out;
  out.value = lp.value;
  out.clique_weights = lp.x;
  for (std::size_t i = 0; i < sets.size(); ++i) {
    if (lp.dual[i] != 0) {
      out.colouring.sets.push_back(sets[i].members);
      out.colouring.weights.push_back(lp.dual[i]);
    }
  }
  return out;
}

namespace {

// Canonical form of a graph on n <= 8 vertices: the lexicographically
// smallest adjacency bitmask over all vertex permutations.
std::uint64_t canonical_key(const OpenGraph& g) {
  int n = g.size();
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::uint64_t best = ~0ULL;
  do {
    std::uint64_t key = 0;
    int bit = 0;
    for (int u = 0; u < n; ++u) {
      for (int v = u + 1; v < n; ++v, ++bit) {
        if (g.has_edge(perm[u], perm[v])) key |= 1ULL << bit;
      }
    }
    best = std::min(best, key);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

OpenGraph from_key(int n, std::uint64_t key) {
  OpenGraph g(n);
  int bit = 0;
  for (int u = 0; u < n; ++u) {
    for (int v = u + 1; v < n; ++v, ++bit) {
      if ((key >> bit) & 1ULL) g.add_edge(u, v);
    }
  }
  return g;
}

}  // namespace

std::vector<OpenGraph> connected_graphs_up_to(int max_n) {
  if (max_n < 1 || max_n > 8) throw CapExceeded("connected-graph enumeration supports 1..8");
  std::vector<OpenGraph> out;
  std::vector<std::uint64_t> current{0};  // K1
  out.push_back(from_key(1, 0));
  for (int n = 2; n <= max_n; ++n) {
    std::unordered_set<std::uint64_t> seen;
    std::vector<std::uint64_t> next;
    for (std::uint64_t key : current) {
      OpenGraph base = from_key(n - 1, key);
      // Attach vertex n-1 to every non-empty subset of the old vertices.
      // Every connected n-graph arises this way from deleting a non-cut
      // vertex, so together with canonicalisation this is exhaustive.
      for (std::uint64_t attach = 1; attach < (1ULL << (n - 1)); ++attach) {
        OpenGraph g(n);
        for (auto [u, v] : base.edge_list()) g.add_edge(u, v);
        for (int u = 0; u < n - 1; ++u) {
          if ((attach >> u) & 1ULL) g.add_edge(u, n - 1);
        }
        std::uint64_t canon = canonical_key(g);
        if (seen.insert(canon).second) {
          next.push_back(canon);
          out.push_back(from_key(n, canon));
        }
      }
    }
    current = std::move(next);
  }
  return out;
}

OpenGraph cycle_graph(int n) {
  if (n < 3) throw InvalidInput("cycle needs at least 3 vertices");
  OpenGraph g(n);
  for (int i = 0; i < n; ++i) g.add_edge(i, (i + 1) % n);
  return g;
}

OpenGraph complete_graph(int n) {
  OpenGraph g(n);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) g.add_edge(i, j);
  }
  return g;
}

OpenGraph path_graph(int n) {
  OpenGraph g(n);
  for (int i = 0; i + 1 < n; ++i) g.add_edge(i, i + 1);
  return g;
}

OpenGraph edgeless_graph(int n) { return OpenGraph(n); }

OpenGraph petersen_graph() {
  OpenGraph g(10);
  for (int i = 0; i < 5; ++i) {
    g.add_edge(i, (i + 1) % 5);        // outer cycle
    g.add_edge(5 + i, 5 + (i + 2) % 5);  // inner pentagram
    g.add_edge(i, 5 + i);              // spokes
  }
  return g;
}

}  // namespace trapkit
