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

#include "trapkit/mbqc.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <functional>
#include <set>

#include "trapkit/errors.hpp"
#include "trapkit/tableau.hpp"

namespace trapkit {

Prep Prep::plus_theta(Angle theta) {
  switch (theta.k()) {
    case 0: return plus();
    case 2: return plus_i();
    case 4: return minus();
    case 6: return minus_i();
    default: return Prep(Kind::PlusTheta, theta);
  }
}

bool Prep::is_clifford() const { return is_z_eigenstate() || theta_.k() % 2 == 0; }

Prep Prep::encrypted(Angle theta, int a) const {
  if (is_z_eigenstate()) {
    // Z(theta) only adds a phase on |1>; X^a flips the bit.
    if (a % 2 == 1) return kind_ == Kind::Zero ? one() : zero();
    return *this;
  }
  Angle phi = xy_angle();
  if (a % 2 == 1) phi = -phi;  // X|+_phi> ~ |+_{-phi}>
  return plus_theta(phi + theta);
}

std::pair<Amplitude, Amplitude> Prep::amplitudes() const {
  constexpr double kSqrtHalf = 0.70710678118654752440;
  switch (kind_) {
    case Kind::Zero: return {1.0, 0.0};
    case Kind::One: return {0.0, 1.0};
    default: return {kSqrtHalf, std::polar(kSqrtHalf, theta_.radians())};
  }
}

std::string Prep::str() const {
  switch (kind_) {
    case Kind::Zero: return "0";
    case Kind::One: return "1";
    case Kind::Plus: return "+";
    case Kind::Minus: return "-";
    case Kind::PlusI: return "+i";
    case Kind::MinusI: return "-i";
    case Kind::PlusTheta: return "t" + std::to_string(theta_.k());
  }
  return "?";
}

Prep Prep::parse(const std::string& text) {
  if (text == "0") return zero();
  if (text == "1") return one();
  if (text == "+") return plus();
  if (text == "-") return minus();
  if (text == "+i") return plus_i();
  if (text == "-i") return minus_i();
  if (!text.empty() && text[0] == 't') {
    return plus_theta(Angle(std::stoi(text.substr(1))));
  }
  throw InvalidInput("unknown preparation tag '" + text + "'");
}

std::vector<int> Flow::s_x(int i) const {
  std::vector<int> out;
  for (auto [j, fj] : f) {
    if (fj == i) out.push_back(j);
  }
  return out;
}

std::vector<int> Flow::s_z(int i, const OpenGraph& g) const {
  std::vector<int> out;
  for (auto [j, fj] : f) {
    if (j != i && g.has_edge(fj, i)) out.push_back(j);
  }
  return out;
}

std::vector<int> MeasurementPattern::output_vertices() const {
  std::vector<int> out;
  for (int v = 0; v < graph.size(); ++v) {
    if ((graph.outputs >> v) & 1ULL) out.push_back(v);
  }
  return out;
}

std::vector<int> MeasurementPattern::s_x(int v) const {
  if ((correction_free >> v) & 1ULL) return {};
  return flow.s_x(v);
}

std::vector<int> MeasurementPattern::s_z(int v) const {
  if ((correction_free >> v) & 1ULL) return {};
  return flow.s_z(v, graph);
}

std::vector<std::pair<int, int>> MeasurementPattern::order_constraints() const {
  std::set<std::pair<int, int>> cons;
  for (auto [i, fi] : flow.f) {
    if (!((correction_free >> fi) & 1ULL)) cons.emplace(i, fi);
    std::uint64_t nbh = graph.neighbours(fi) & ~(1ULL << i) & ~correction_free;
    for (int j = 0; j < graph.size(); ++j) {
      if ((nbh >> j) & 1ULL) cons.emplace(i, j);
    }
  }
  for (auto& c : extra_order) cons.insert(c);
  return {cons.begin(), cons.end()};
}

std::vector<int> MeasurementPattern::measurement_order() const {
  int n = graph.size();
  std::vector<std::vector<int>> succ(n);
  std::vector<int> indeg(n, 0);
  for (auto [a, b] : order_constraints()) {
    succ[a].push_back(b);
    ++indeg[b];
  }
  std::set<int> ready;
  for (int v = 0; v < n; ++v) {
    if (indeg[v] == 0) ready.insert(v);
  }
  std::vector<int> topo;
  while (!ready.empty()) {
    int v = *ready.begin();
    ready.erase(ready.begin());
    topo.push_back(v);
    for (int w : succ[v]) {
      if (--indeg[w] == 0) ready.insert(w);
    }
  }
  if (static_cast<int>(topo.size()) != n) {
    throw InvalidInput("measurement order constraints contain a cycle");
  }
  std::vector<int> out;
  std::uint64_t measured = measured_mask();
  for (int v : topo) {
    if ((measured >> v) & 1ULL) out.push_back(v);
  }
  return out;
}

std::vector<std::string> validate_flow(const MeasurementPattern& pattern) {
  std::vector<std::string> violations;
  const OpenGraph& g = pattern.graph;
  std::map<int, int> preimage;
  for (auto [i, fi] : pattern.flow.f) {
    if ((g.outputs >> i) & 1ULL) {
      violations.push_back("flow defined on output vertex " + std::to_string(i));
    }
    if ((g.inputs >> fi) & 1ULL) {
      violations.push_back("f(" + std::to_string(i) + ") = " + std::to_string(fi) +
                           " is an input vertex");
    }
    if (fi < 0 || fi >= g.size() || i < 0 || i >= g.size()) {
      violations.push_back("flow references unknown vertex");
      continue;
    }
    if (!g.has_edge(i, fi)) {
      violations.push_back("(" + std::to_string(i) + "," + std::to_string(fi) +
                           ") is not an edge");
    }
    auto [it, fresh] = preimage.emplace(fi, i);
    if (!fresh) {
      violations.push_back("flow not injective: f(" + std::to_string(it->second) +
                           ") = f(" + std::to_string(i) + ") = " + std::to_string(fi));
    }
  }
  // Both ordering conditions hold iff the induced precedence relation is
  // acyclic (a total order extending it then exists).
  try {
    pattern.measurement_order();
  } catch (const InvalidInput&) {
    violations.push_back("flow-induced ordering conditions are cyclic");
  }
  return violations;
}

namespace {

Statevector initial_state(const MeasurementPattern& pattern, const PatternInput& input,
                          int qubit_cap) {
  int n = pattern.graph.size();
  Statevector st(n, qubit_cap);
  std::vector<std::pair<Amplitude, Amplitude>> amp(n, {1.0, 0.0});
  std::vector<int> ent_pos(n, -1);
  for (std::size_t k = 0; k < input.entangled_vertices.size(); ++k) {
    ent_pos[input.entangled_vertices[k]] = static_cast<int>(k);
  }
  for (int v = 0; v < n; ++v) {
    if (ent_pos[v] >= 0) continue;
    auto it = input.preps.find(v);
    amp[v] = (it != input.preps.end()) ? it->second.amplitudes() : Prep::plus().amplitudes();
  }
  if (!input.entangled_vertices.empty() &&
      input.entangled_amps.size() != (1ULL << input.entangled_vertices.size())) {
    throw InvalidInput("entangled input amplitude count mismatch");
  }
  for (std::uint64_t basis = 0; basis < st.dim(); ++basis) {
    Amplitude a(1.0, 0.0);
    std::uint64_t ent_index = 0;
    for (int v = 0; v < n; ++v) {
      bool one = (basis >> v) & 1ULL;
      if (ent_pos[v] >= 0) {
        if (one) ent_index |= 1ULL << ent_pos[v];
      } else {
        a *= one ? amp[v].second : amp[v].first;
      }
    }
    if (!input.entangled_vertices.empty()) a *= input.entangled_amps[ent_index];
    st.set_amp(basis, a);
  }
  st.normalise();
  return st;
}

Angle effective_angle(const MeasurementPattern& pattern, const std::map<int, int>& outcomes,
                      int v) {
  auto it = pattern.angles.find(v);
  if (it == pattern.angles.end()) {
    throw InvalidInput("no measurement angle for vertex " + std::to_string(v));
  }
  int sx = 0;
  for (int j : pattern.s_x(v)) sx ^= outcomes.at(j);
  int sz = 0;
  for (int j : pattern.s_z(v)) sz ^= outcomes.at(j);
  Angle phi = sx ? -it->second : it->second;
  if (sz) phi = phi.plus_pi();
  return phi;
}

int forced_outcome_for(const std::map<int, int>& forced, int v) {
  auto it = forced.find(v);
  if (it == forced.end()) {
    throw InvalidInput("no forced outcome for vertex " + std::to_string(v));
  }
  return it->second;
}

}  // namespace

PatternRunResult run_pattern(const MeasurementPattern& pattern, const PatternInput& input,
                             OutcomeSource outcomes, const PauliDeviation& deviation,
                             int qubit_cap) {
  PatternRunResult result;
  Statevector st = initial_state(pattern, input, qubit_cap);
  for (auto [u, v] : pattern.graph.edge_list()) st.apply_cz(u, v);

  for (int v : pattern.measurement_order()) {
    Angle phi = effective_angle(pattern, result.outcomes, v);
    st.apply_zrot(v, -phi.radians());
    st.apply_h(v);
    Pauli dv = deviation.at(v);
    if (dv == Pauli::X || dv == Pauli::Y) st.apply_pauli(v, Pauli::X);
    int b;
    if (outcomes.forced != nullptr) {
      b = forced_outcome_for(*outcomes.forced, v);
      st.project(v, b);
    } else if (outcomes.rng != nullptr) {
      b = st.measure(v, *outcomes.rng);
    } else {
      throw InvalidInput("no outcome source provided");
    }
    result.outcomes[v] = b;
  }

  result.output_qubits = pattern.output_vertices();
  for (int o : result.output_qubits) {
    st.apply_pauli(o, deviation.at(o));
  }
  for (int o : result.output_qubits) {
    int sx = 0;
    for (int j : pattern.s_x(o)) sx ^= result.outcomes.at(j);
    int sz = 0;
    for (int j : pattern.s_z(o)) sz ^= result.outcomes.at(j);
    if (sx) st.apply_pauli(o, Pauli::X);
    if (sz) st.apply_pauli(o, Pauli::Z);
  }

  std::uint64_t fixed_mask = pattern.measured_mask();
  std::uint64_t fixed_values = 0;
  for (auto [v, b] : result.outcomes) {
    if (b) fixed_values |= 1ULL << v;
  }
  result.output_state = st.reduced(result.output_qubits, fixed_mask, fixed_values);

  int pos = 0;
  for (int v = 0; v < pattern.graph.size(); ++v) {
    if ((pattern.classical_outputs >> v) & 1ULL) {
      if (result.outcomes.at(v)) result.classical_result |= 1ULL << pos;
      ++pos;
    }
  }
  return result;
}

std::map<int, int> run_clifford_pattern(const MeasurementPattern& pattern,
                                        const ProductState& input, OutcomeSource outcomes,
                                        const PauliDeviation& deviation) {
  if (pattern.graph.outputs != 0) {
    throw InvalidInput("tableau back-end supports fully measured patterns only");
  }
  int n = pattern.graph.size();
  Tableau tab(n);
  for (int v = 0; v < n; ++v) {
    auto it = input.find(v);
    Prep p = (it != input.end()) ? it->second : Prep::plus();
    if (!p.is_clifford()) throw NotClifford("non-Clifford preparation at vertex " +
                                            std::to_string(v));
    switch (p.kind()) {
      case Prep::Kind::Zero: break;
      case Prep::Kind::One: tab.apply_x(v); break;
      case Prep::Kind::Plus: tab.apply_h(v); break;
      case Prep::Kind::Minus: tab.apply_h(v); tab.apply_z(v); break;
      case Prep::Kind::PlusI: tab.apply_h(v); tab.apply_s(v); break;
      case Prep::Kind::MinusI: tab.apply_h(v); tab.apply_sdg(v); break;
      case Prep::Kind::PlusTheta: throw NotClifford("odd pi/4 preparation");
    }
  }
  for (auto [u, v] : pattern.graph.edge_list()) tab.apply_cz(u, v);

  std::map<int, int> result;
  for (int v : pattern.measurement_order()) {
    Angle phi = effective_angle(pattern, result, v);
    Angle rot = -phi;
    switch (rot.k()) {
      case 0: break;
      case 2: tab.apply_s(v); break;
      case 4: tab.apply_z(v); break;
      case 6: tab.apply_sdg(v); break;
      default: throw NotClifford("angle " + std::to_string(phi.k()) +
                                 "*pi/4 is an odd multiple of pi/4");
    }
    tab.apply_h(v);
    Pauli dv = deviation.at(v);
    if (dv == Pauli::X || dv == Pauli::Y) tab.apply_x(v);
    std::optional<int> forced;
    if (outcomes.forced != nullptr) forced = forced_outcome_for(*outcomes.forced, v);
    result[v] = tab.measure_z(v, outcomes.rng, forced);
  }
  return result;
}

std::map<std::uint64_t, double> output_distribution(const MeasurementPattern& pattern,
                                                    const PatternInput& input,
                                                    const PauliDeviation& deviation,
                                                    int qubit_cap) {
  std::map<std::uint64_t, double> dist;
  std::vector<int> order = pattern.measurement_order();
  std::map<int, int> outcomes;

  std::function<void(Statevector, std::size_t, double)> descend =
      [&](Statevector st, std::size_t idx, double prob) {
        if (idx == order.size()) {
          std::uint64_t result = 0;
          int pos = 0;
          for (int v = 0; v < pattern.graph.size(); ++v) {
            if ((pattern.classical_outputs >> v) & 1ULL) {
              if (outcomes.at(v)) result |= 1ULL << pos;
              ++pos;
            }
          }
          dist[result] += prob;
          return;
        }
        int v = order[idx];
        Angle phi = effective_angle(pattern, outcomes, v);
        st.apply_zrot(v, -phi.radians());
        st.apply_h(v);
        Pauli dv = deviation.at(v);
        if (dv == Pauli::X || dv == Pauli::Y) st.apply_pauli(v, Pauli::X);
        double p0 = st.prob_zero(v);
        for (int b : {0, 1}) {
          double pb = b == 0 ? p0 : 1.0 - p0;
          if (pb < 1e-12) continue;
          Statevector branch = st;
          branch.project(v, b);
          outcomes[v] = b;
          descend(std::move(branch), idx + 1, prob * pb);
        }
        outcomes.erase(v);
      };

  Statevector st = initial_state(pattern, input, qubit_cap);
  for (auto [u, v] : pattern.graph.edge_list()) st.apply_cz(u, v);
  descend(std::move(st), 0, 1.0);
  return dist;
}

OpenGraph cluster_graph(int rows, int cols, bool cylinder) {
  if (rows < 1 || cols < 1) throw InvalidInput("cluster dimensions must be positive");
  OpenGraph g(rows * cols);
  for (int c = 0; c < cols; ++c) {
    for (int r = 0; r < rows; ++r) {
      if (r + 1 < rows) g.add_edge(cluster_vertex(rows, r, c), cluster_vertex(rows, r + 1, c));
      if (c + 1 < cols) g.add_edge(cluster_vertex(rows, r, c), cluster_vertex(rows, r, c + 1));
    }
    if (cylinder && rows > 2) {
      g.add_edge(cluster_vertex(rows, rows - 1, c), cluster_vertex(rows, 0, c));
    }
  }
  return g;
}

}  // namespace trapkit
