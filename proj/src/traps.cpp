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

#include "trapkit/traps.hpp"

#include <algorithm>
#include <bit>
#include <set>

#include "trapkit/errors.hpp"

namespace trapkit {

bool DecisionFn::rejects(const std::map<int, int>& outcomes) const {
  for (const auto& check : parity_checks) {
    int parity = 0;
    for (int v : check) parity ^= outcomes.at(v);
    if (parity) return true;
  }
  return false;
}

PauliWord vertex_stabiliser(const OpenGraph& g, int i) {
  PauliWord word(g.size());
  word.set(i, Pauli::X);
  for (int j = 0; j < g.size(); ++j) {
    if (g.has_edge(i, j)) word.set(j, Pauli::Z);
  }
  return word;
}

ProductState prepare_stabiliser_product(const PauliWord& word) {
  if (!word.is_hermitian()) {
    throw InvalidInput("word squares to -I; it has no +1 product eigenstate");
  }
  bool sign_pending = word.sign() == -1;
  ProductState out;
  for (int i = 0; i < word.size(); ++i) {
    Pauli p = word.at(i);
    bool flip = false;
    if (p != Pauli::I && sign_pending) {
      flip = true;
      sign_pending = false;
    }
    switch (p) {
      case Pauli::I: out[i] = Prep::plus(); break;
      case Pauli::X: out[i] = flip ? Prep::minus() : Prep::plus(); break;
      case Pauli::Y: out[i] = flip ? Prep::minus_i() : Prep::plus_i(); break;
      case Pauli::Z: out[i] = flip ? Prep::one() : Prep::zero(); break;
    }
  }
  if (sign_pending) throw InvalidInput("-I has no +1 eigenstate");
  return out;
}

bool check_overlap_condition(const std::vector<PauliWord>& words) {
  if (words.empty()) return true;
  int n = words.front().size();
  for (const auto& w : words) {
    if (w.size() != n) throw InvalidInput("overlap check: word sizes differ");
  }
  for (int site = 0; site < n; ++site) {
    Pauli common = Pauli::I;
    for (const auto& w : words) {
      Pauli p = w.at(site);
      if (p == Pauli::I) continue;
      if (common == Pauli::I) {
        common = p;
      } else if (common != p) {
        return false;
      }
    }
  }
  return true;
}

TrappifiedCanvas build_standard_trap(const OpenGraph& g, std::uint64_t h) {
  if (h == 0) throw InvalidInput("standard trap needs a non-empty vertex set");
  if (!g.is_independent(h)) throw InvalidInput("standard trap set is not independent");
  TrappifiedCanvas canvas;
  canvas.graph = g;
  canvas.kind = CanvasKind::Standard;
  canvas.h_mask = h;
  std::uint64_t dummies = g.open_neighbourhood(h);
  canvas.vt = h | dummies;
  canvas.it = canvas.vt;
  canvas.ot = h;
  for (int v = 0; v < g.size(); ++v) {
    if ((h >> v) & 1ULL) {
      canvas.sigma[v] = Prep::plus();
      canvas.decision.parity_checks.push_back({v});
    } else if ((dummies >> v) & 1ULL) {
      canvas.sigma[v] = Prep::zero();
    }
    if ((canvas.vt >> v) & 1ULL) canvas.angles[v] = Angle(0);
  }
  return canvas;
}

TrappifiedCanvas build_general_trap(const OpenGraph& g, std::uint64_t h) {
  if (h == 0) throw InvalidInput("general trap needs a non-empty vertex set");
  PauliWord product(g.size());
  for (int i = 0; i < g.size(); ++i) {
    if ((h >> i) & 1ULL) product = product * vertex_stabiliser(g, i);
  }
  TrappifiedCanvas canvas;
  canvas.graph = g;
  canvas.kind = CanvasKind::General;
  canvas.h_mask = h;
  canvas.vt = g.vertex_mask();
  canvas.it = canvas.vt;
  canvas.ot = h;
  canvas.sigma = prepare_stabiliser_product(product);
  for (int v = 0; v < g.size(); ++v) canvas.angles[v] = Angle(0);
  std::vector<int> check;
  for (int v = 0; v < g.size(); ++v) {
    if ((h >> v) & 1ULL) check.push_back(v);
  }
  canvas.decision.parity_checks.push_back(check);
  return canvas;
}

TrappifiedCanvas build_trivial_canvas(const OpenGraph& g) {
  TrappifiedCanvas canvas;
  canvas.graph = g;
  canvas.kind = CanvasKind::Custom;
  canvas.vt = g.vertex_mask();
  canvas.it = canvas.vt;
  canvas.ot = 0;
  for (int v = 0; v < g.size(); ++v) {
    canvas.sigma[v] = Prep::plus();
    canvas.angles[v] = Angle(0);
  }
  return canvas;
}

std::size_t TrappifiedScheme::sample_index(Rng& rng) const {
  double u = random_unit(rng);
  double acc = 0.0;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    acc += to_double(weights[i]);
    if (u < acc) return i;
  }
  return weights.size() - 1;
}

void validate_scheme(const TrappifiedScheme& scheme) {
  if (scheme.canvases.empty()) throw InvalidInput("scheme has no canvases");
  if (scheme.canvases.size() != scheme.weights.size()) {
    throw InvalidInput("scheme weight count mismatch");
  }
  Rational total = 0;
  for (const auto& w : scheme.weights) {
    if (w < 0) throw InvalidInput("negative canvas weight");
    total += w;
  }
  if (total != 1) throw InvalidInput("canvas weights must sum to 1");
  std::set<std::pair<int, int>> constraints;
  for (const auto& canvas : scheme.canvases) {
    if (!(canvas.graph == scheme.graph)) {
      throw InvalidInput("canvas graph differs from the scheme graph");
    }
    MeasurementPattern probe;
    probe.graph = canvas.graph;
    probe.flow = canvas.partial_flow;
    for (auto c : probe.order_constraints()) constraints.insert(c);
  }
  // Blind-compatibility: a common order extending every canvas order exists
  // iff the union of their precedence constraints is acyclic.
  MeasurementPattern combined;
  combined.graph = scheme.graph;
  combined.extra_order.assign(constraints.begin(), constraints.end());
  try {
    combined.measurement_order();
  } catch (const InvalidInput&) {
    throw InvalidInput("canvases are not blind-compatible: no common order");
  }
}

TrappifiedScheme single_canvas_scheme(TrappifiedCanvas canvas) {
  TrappifiedScheme scheme;
  scheme.graph = canvas.graph;
  scheme.canvases.push_back(std::move(canvas));
  scheme.weights.push_back(1);
  return scheme;
}

TrappifiedScheme standard_trap_scheme(const OpenGraph& g, const FractionalColouring& family) {
  if (family.sets.empty()) throw InvalidInput("empty trap family");
  if (family.sets.size() != family.weights.size()) {
    throw InvalidInput("trap family weight count mismatch");
  }
  TrappifiedScheme scheme;
  scheme.graph = g;
  Rational total = 0;
  for (std::size_t i = 0; i < family.sets.size(); ++i) {
    scheme.canvases.push_back(build_standard_trap(g, family.sets[i]));
    scheme.weights.push_back(family.weights[i]);
    total += family.weights[i];
  }
  if (total != 1) throw InvalidInput("trap family weights must sum to 1");
  return scheme;
}

TrappifiedScheme uniform_general_trap_scheme(const OpenGraph& g) {
  if (g.size() > 16) throw CapExceeded("uniform general-trap scheme beyond 16 vertices");
  TrappifiedScheme scheme;
  scheme.graph = g;
  std::uint64_t count = 1ULL << g.size();
  Rational weight(1, BigInt(count));
  scheme.canvases.push_back(build_trivial_canvas(g));
  scheme.weights.push_back(weight);
  for (std::uint64_t h = 1; h < count; ++h) {
    scheme.canvases.push_back(build_general_trap(g, h));
    scheme.weights.push_back(weight);
  }
  return scheme;
}

TrappifiedScheme compose_schemes(const std::vector<TrappifiedScheme>& schemes,
                                 const std::vector<Rational>& p) {
  if (schemes.empty() || schemes.size() != p.size()) {
    throw InvalidInput("composition needs one outer weight per scheme");
  }
  Rational total = 0;
  for (const auto& pi : p) {
    if (pi < 0) throw InvalidInput("negative outer weight");
    total += pi;
  }
  if (total != 1) throw InvalidInput("outer weights must sum to 1");
  TrappifiedScheme out;
  out.graph = schemes.front().graph;
  out.embedding = schemes.front().embedding;
  for (std::size_t i = 0; i < schemes.size(); ++i) {
    if (!(schemes[i].graph == out.graph)) {
      throw InvalidInput("schemes are not blind-compatible: different graphs");
    }
    for (std::size_t j = 0; j < schemes[i].canvases.size(); ++j) {
      out.canvases.push_back(schemes[i].canvases[j]);
      out.weights.push_back(p[i] * schemes[i].weights[j]);
    }
  }
  validate_scheme(out);
  return out;
}

TrappifiedPattern canvas_pattern(const TrappifiedCanvas& canvas, Rng* rng) {
  TrappifiedPattern out;
  MeasurementPattern& pattern = out.pattern;
  pattern.graph = canvas.graph;
  pattern.graph.inputs = canvas.graph.vertex_mask();  // client prepares everything
  pattern.flow = canvas.partial_flow;
  pattern.angles = canvas.angles;
  pattern.correction_free = canvas.graph.vertex_mask();  // pure test round
  std::uint64_t measured = pattern.measured_mask();
  for (int v = 0; v < canvas.graph.size(); ++v) {
    if (!((measured >> v) & 1ULL)) continue;
    if (pattern.angles.count(v)) continue;
    pattern.angles[v] = rng != nullptr ? Angle(static_cast<int>(random_below(*rng, 8)))
                                       : Angle(0);
  }
  out.preps = canvas.sigma;
  for (int v = 0; v < canvas.graph.size(); ++v) {
    if (!out.preps.count(v)) out.preps[v] = Prep::plus();
  }
  return out;
}

TrappifiedCanvas cluster_trap_canvas(int rows, int cols, bool cylinder, int block_row,
                                     int block_col) {
  if (rows < 3 || cols < 3) throw InvalidInput("cluster trap needs at least a 3x3 grid");
  if (block_col < 0 || block_col + 2 >= cols) throw InvalidInput("trap block column range");
  if (block_row < 0 || (!cylinder && block_row + 2 > rows - 1) ||
      (cylinder && block_row >= rows)) {
    throw InvalidInput("trap block row range");
  }
  TrappifiedCanvas canvas;
  canvas.graph = cluster_graph(rows, cols, cylinder);
  canvas.kind = CanvasKind::Standard;
  int centre = cluster_vertex(rows, (block_row + 1) % rows, block_col + 1);
  canvas.h_mask = 1ULL << centre;
  for (int dr = 0; dr < 3; ++dr) {
    for (int dc = 0; dc < 3; ++dc) {
      int v = cluster_vertex(rows, (block_row + dr) % rows, block_col + dc);
      canvas.vt |= 1ULL << v;
      canvas.sigma[v] = v == centre ? Prep::plus() : Prep::zero();
      canvas.angles[v] = Angle(0);
    }
  }
  canvas.it = canvas.vt;
  canvas.ot = canvas.h_mask;
  canvas.decision.parity_checks.push_back({centre});
  return canvas;
}

namespace {

struct ClusterShape {
  int rows = 0;
  int cols = 0;
  bool cylinder = false;
};

std::optional<ClusterShape> match_cluster(const OpenGraph& g, int size_delta) {
  // rows*cols = |g| and (rows-3)*cols = |g| - size_delta give cols = delta/3.
  if (size_delta % 3 != 0) return std::nullopt;
  int cols = size_delta / 3;
  if (cols <= 0 || g.size() % cols != 0) return std::nullopt;
  int rows = g.size() / cols;
  if (rows < 3) return std::nullopt;
  for (bool cyl : {false, true}) {
    OpenGraph want = cluster_graph(rows, cols, cyl);
    want.inputs = g.inputs;
    want.outputs = g.outputs;
    if (want == g) return ClusterShape{rows, cols, cyl};
  }
  return std::nullopt;
}

}  // namespace

std::optional<TrappifiedPattern> embed_dummy_isolated(const MeasurementPattern& computation,
                                                      const TrappifiedCanvas& canvas,
                                                      Rng* rng) {
  // Empty computation: the canvas is returned unchanged (as a pattern).
  if (computation.graph.size() == 0) {
    return canvas_pattern(canvas, rng);
  }

  int delta = canvas.graph.size() - computation.graph.size();
  auto shape = match_cluster(canvas.graph, delta);
  if (!shape) return std::nullopt;
  int rows = shape->rows;
  int cols = shape->cols;

  // The computation must live on the plain (rows-3) x cols grid.
  OpenGraph expected = cluster_graph(rows - 3, cols, false);
  expected.inputs = computation.graph.inputs;
  expected.outputs = computation.graph.outputs;
  if (!(expected == computation.graph)) return std::nullopt;

  // Locate the trap block: rows occupied by V_T.
  std::uint64_t block_rows_mask = 0;
  for (int v = 0; v < canvas.graph.size(); ++v) {
    if ((canvas.vt >> v) & 1ULL) block_rows_mask |= 1ULL << (v % rows);
  }
  int r0 = -1;
  for (int r = 0; r < rows; ++r) {
    std::uint64_t band = 0;
    for (int d = 0; d < 3; ++d) band |= 1ULL << ((r + d) % rows);
    if (band == block_rows_mask) {
      r0 = r;
      break;
    }
  }
  if (r0 < 0) return std::nullopt;
  if (!shape->cylinder && r0 != 0 && r0 != rows - 3) {
    return std::nullopt;  // free rows would not be contiguous
  }

  TrappifiedPattern out;
  MeasurementPattern& p = out.pattern;
  p.graph = canvas.graph;
  p.graph.inputs = 0;
  p.graph.outputs = 0;
  p.angles = canvas.angles;
  p.flow = canvas.partial_flow;

  auto map_vertex = [&](int v) {
    int r = v % (rows - 3);
    int c = v / (rows - 3);
    return cluster_vertex(rows, (r0 + 3 + r) % rows, c);
  };
  out.vertex_map.resize(computation.graph.size());
  for (int v = 0; v < computation.graph.size(); ++v) {
    int host = map_vertex(v);
    out.vertex_map[v] = host;
    out.computation_vertices |= 1ULL << host;
  }

  // Boundary dummy rows outside the block isolate the computation rows from
  // the band. A rectangle needs only the band row facing the computation; a
  // cylinder needs both.
  std::vector<int> dummy_rows;
  if (shape->cylinder) {
    dummy_rows = {r0 % rows, (r0 + 2) % rows};
  } else if (r0 == 0) {
    dummy_rows = {2};
  } else {
    dummy_rows = {r0};
  }

  out.preps = canvas.sigma;
  std::uint64_t dummy_mask = 0;
  for (int r : dummy_rows) {
    for (int c = 0; c < cols; ++c) {
      int v = cluster_vertex(rows, r, c);
      if ((canvas.vt >> v) & 1ULL) continue;  // block vertices are already fixed
      out.preps[v] = Prep::zero();
      dummy_mask |= 1ULL << v;
    }
  }
  for (int v = 0; v < computation.graph.size(); ++v) {
    if ((computation.graph.inputs >> v) & 1ULL) {
      p.graph.inputs |= 1ULL << out.vertex_map[v];
    }
  }
  p.graph.inputs |= canvas.it | dummy_mask;

  for (auto [v, a] : computation.angles) p.angles[out.vertex_map[v]] = a;
  for (int v = 0; v < computation.graph.size(); ++v) {
    if ((computation.graph.outputs >> v) & 1ULL) p.graph.outputs |= 1ULL << out.vertex_map[v];
    if ((computation.classical_outputs >> v) & 1ULL) {
      p.classical_outputs |= 1ULL << out.vertex_map[v];
    }
  }
  std::uint64_t measured = p.measured_mask();
  for (int v = 0; v < p.graph.size(); ++v) {
    if (((measured >> v) & 1ULL) && !p.angles.count(v)) {
      p.angles[v] = rng != nullptr ? Angle(static_cast<int>(random_below(*rng, 8))) : Angle(0);
    }
  }

  // Flow and order, mapped; all non-computation vertices are correction-free
  // so the embedded flow induces no dependencies on the trap.
  for (auto [v, fv] : computation.flow.f) {
    p.flow.f[out.vertex_map[v]] = out.vertex_map[fv];
  }
  for (auto [a, b] : computation.extra_order) {
    p.extra_order.emplace_back(out.vertex_map[a], out.vertex_map[b]);
  }
  p.correction_free = p.graph.vertex_mask() & ~out.computation_vertices;
  return out;
}

bool embedding_is_proper(const MeasurementPattern& pattern, std::uint64_t vt) {
  for (auto [a, b] : pattern.order_constraints()) {
    bool a_in = (vt >> a) & 1ULL;
    bool b_in = (vt >> b) & 1ULL;
    if (a_in != b_in) return false;  // dependency crossing the trap boundary
  }
  for (int v = 0; v < pattern.graph.size(); ++v) {
    if ((vt >> v) & 1ULL) continue;
    for (int j : pattern.s_x(v)) {
      if ((vt >> j) & 1ULL) return false;
    }
    for (int j : pattern.s_z(v)) {
      if ((vt >> j) & 1ULL) return false;
    }
  }
  return true;
}

}  // namespace trapkit
