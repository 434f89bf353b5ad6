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

#include "trapkit/analysis.hpp"

#include <bit>
#include <cmath>
#include <functional>

#include "trapkit/errors.hpp"
#include "trapkit/tableau.hpp"

namespace trapkit {

std::vector<PauliDeviation> deviation_representatives(const DeviationSetSpec& set,
                                                      int num_vertices, int cap) {
  using Family = DeviationSetSpec::Family;
  std::vector<PauliDeviation> out;
  switch (set.family) {
    case Family::Explicit:
      return set.list;
    case Family::IdentityOnly:
      out.push_back({});
      return out;
    case Family::ZOnly:
      for (int v = 0; v < num_vertices; ++v) {
        out.push_back(PauliDeviation::single(v, Pauli::Z));
      }
      return out;
    case Family::AllXY:
    case Family::AllPauli: {
      if (num_vertices > cap) {
        throw CapExceeded("XY-support enumeration beyond " + std::to_string(cap) +
                          " vertices");
      }
      if (set.family == Family::AllPauli) out.push_back({});  // the Z-only/identity class
      for (std::uint64_t support = 1; support < (1ULL << num_vertices); ++support) {
        PauliDeviation dev;
        for (int v = 0; v < num_vertices; ++v) {
          if ((support >> v) & 1ULL) dev.set(v, Pauli::X);
        }
        out.push_back(std::move(dev));
      }
      return out;
    }
  }
  throw InvalidInput("unknown deviation family");
}

Rational reject_probability_predicate(const TrappifiedCanvas& canvas,
                                      const PauliDeviation& deviation) {
  std::uint64_t xy = deviation.xy_support();
  switch (canvas.kind) {
    case CanvasKind::Standard:
      return (xy & canvas.h_mask) != 0 ? 1 : 0;
    case CanvasKind::General:
      return (std::popcount(xy & canvas.h_mask) % 2) != 0 ? 1 : 0;
    case CanvasKind::Custom:
      if (canvas.decision.parity_checks.empty()) return 0;  // trivial test
      throw InvalidInput("no combinatorial predicate for custom canvases");
  }
  throw InvalidInput("unknown canvas kind");
}

Rational reject_probability_simulated(const TrappifiedCanvas& canvas,
                                      const PauliDeviation& deviation) {
  if (canvas.decision.parity_checks.empty()) return 0;
  if (!canvas.partial_flow.f.empty()) {
    throw CapExceeded("exact trap distribution needs a non-adaptive canvas");
  }
  TrappifiedPattern tp = canvas_pattern(canvas, nullptr);
  const MeasurementPattern& pattern = tp.pattern;
  int n = pattern.graph.size();

  Tableau tab(n);
  for (int v = 0; v < n; ++v) {
    auto it = tp.preps.find(v);
    Prep p = it != tp.preps.end() ? it->second : Prep::plus();
    if (!p.is_clifford()) throw NotClifford("non-Clifford canvas preparation");
    switch (p.kind()) {
      case Prep::Kind::Zero: break;
      case Prep::Kind::One: tab.apply_x(v); break;
      case Prep::Kind::Plus: tab.apply_h(v); break;
      case Prep::Kind::Minus: tab.apply_h(v); tab.apply_z(v); break;
      case Prep::Kind::PlusI: tab.apply_h(v); tab.apply_s(v); break;
      case Prep::Kind::MinusI: tab.apply_h(v); tab.apply_sdg(v); break;
      case Prep::Kind::PlusTheta: throw NotClifford("odd pi/4 canvas preparation");
    }
  }
  for (auto [u, v] : pattern.graph.edge_list()) tab.apply_cz(u, v);

  // Move every trap-output vertex into its measurement frame. Their angles
  // are fixed (correction-free), so the parity checks become static Z-type
  // observables; all checks commute, and the joint acceptance probability is
  // the product of sequential conditionals.
  std::uint64_t frame_done = 0;
  for (const auto& check : canvas.decision.parity_checks) {
    for (int v : check) {
      if ((frame_done >> v) & 1ULL) continue;
      frame_done |= 1ULL << v;
      Angle phi = pattern.angles.count(v) ? pattern.angles.at(v) : Angle(0);
      Angle rot = -phi;
      switch (rot.k()) {
        case 0: break;
        case 2: tab.apply_s(v); break;
        case 4: tab.apply_z(v); break;
        case 6: tab.apply_sdg(v); break;
        default: throw NotClifford("odd pi/4 canvas angle");
      }
      tab.apply_h(v);
    }
  }

  std::uint64_t xy = deviation.xy_support();
  Rational accept = 1;
  for (const auto& check : canvas.decision.parity_checks) {
    PauliWord word(n);
    std::uint64_t check_mask = 0;
    for (int v : check) {
      word.set(v, Pauli::Z);
      check_mask |= 1ULL << v;
    }
    // An X/Y deviation flips each hit outcome, so acceptance requires the
    // measured parity to cancel the flips.
    int wanted = std::popcount(xy & check_mask) % 2;
    auto sign = tab.deterministic_sign(word);
    if (sign.has_value()) {
      int outcome = (*sign == 1) ? 0 : 1;
      if (outcome != wanted) return 1;  // this check fails with certainty
    } else {
      accept /= 2;
      tab.measure_pauli(word, nullptr, wanted);
    }
  }
  return 1 - accept;
}

Rational reject_probability(const TrappifiedCanvas& canvas, const PauliDeviation& deviation) {
  if (canvas.kind == CanvasKind::Standard || canvas.kind == CanvasKind::General ||
      canvas.decision.parity_checks.empty()) {
    return reject_probability_predicate(canvas, deviation);
  }
  return reject_probability_simulated(canvas, deviation);
}

Rational scheme_reject_probability(const TrappifiedScheme& scheme,
                                   const PauliDeviation& deviation) {
  Rational total = 0;
  for (std::size_t i = 0; i < scheme.canvases.size(); ++i) {
    total += scheme.weights[i] * reject_probability(scheme.canvases[i], deviation);
  }
  return total;
}

RateFragment scheme_epsilon(const TrappifiedScheme& scheme, const DeviationSetSpec& set,
                            int cap) {
  auto devs = deviation_representatives(set, scheme.graph.size(), cap);
  if (devs.empty()) throw InvalidInput("empty deviation set");
  RateFragment out;
  bool first = true;
  for (const auto& dev : devs) {
    Rational reject = scheme_reject_probability(scheme, dev);
    if (first || reject < out.detection_rate) {
      out.detection_rate = reject;
      out.witness = dev;
      first = false;
    }
  }
  out.value = 1 - out.detection_rate;
  return out;
}

RateFragment scheme_delta(const TrappifiedScheme& scheme, const DeviationSetSpec& set,
                          int cap) {
  auto devs = deviation_representatives(set, scheme.graph.size(), cap);
  if (devs.empty()) throw InvalidInput("empty deviation set");
  RateFragment out;
  Rational min_accept;
  bool first = true;
  for (const auto& dev : devs) {
    Rational accept = 1 - scheme_reject_probability(scheme, dev);
    if (first || accept < min_accept) {
      min_accept = accept;
      out.witness = dev;
      first = false;
    }
  }
  out.value = 1 - min_accept;
  out.detection_rate = 0;
  return out;
}

std::pair<PauliDeviation, Rational> optimal_attack(const TrappifiedScheme& scheme,
                                                   const DeviationSetSpec& set, int cap) {
  RateFragment eps = scheme_epsilon(scheme, set, cap);
  return {eps.witness, 1 - eps.detection_rate};
}

double pattern_nu(const MeasurementPattern& pattern, const PatternInput& input,
                  const PauliDeviation& deviation) {
  auto ideal = output_distribution(pattern, input, {});
  auto deviated = output_distribution(pattern, input, deviation);
  double tv = 0.0;
  for (auto [key, prob] : ideal) {
    auto it = deviated.find(key);
    tv += std::abs(prob - (it == deviated.end() ? 0.0 : it->second));
  }
  for (auto [key, prob] : deviated) {
    if (!ideal.count(key)) tv += prob;
  }
  return tv / 2.0;
}

NuFragment scheme_nu(const TrappifiedScheme& scheme, const DeviationSetSpec& set,
                     const MeasurementPattern* computation,
                     const std::vector<ProductState>& inputs, int cap) {
  NuFragment out;
  if (scheme.embedding == EmbeddingKind::None) {
    out.pure_trap_case = true;
    out.nu = computation == nullptr ? 0.0 : 1.0;
    return out;
  }
  if (computation == nullptr) throw InvalidInput("nu needs a computation to embed");
  if (computation->graph.outputs != 0) {
    throw InvalidInput("nu is computed for classical-output computations");
  }
  if (scheme.graph.size() > 12) throw CapExceeded("nu simulation cap exceeded");
  // Deviations address host-graph vertices; symbolic families are capped
  // harder here because every representative costs a full branch-exhaustive
  // simulation.
  auto devs = deviation_representatives(set, scheme.graph.size(), cap);
  std::vector<ProductState> input_list = inputs.empty() ? std::vector<ProductState>{{}}
                                                        : inputs;
  for (const auto& dev : devs) {
    double weighted = 0.0;
    for (std::size_t i = 0; i < scheme.canvases.size(); ++i) {
      auto embedded = embed_dummy_isolated(*computation, scheme.canvases[i], nullptr);
      if (!embedded) throw InvalidInput("computation does not embed into the scheme");
      double worst_input = 0.0;
      for (const auto& comp_input : input_list) {
        ProductState preps = embedded->preps;
        for (auto [v, prep] : comp_input) preps[embedded->vertex_map[v]] = prep;
        worst_input = std::max(
            worst_input, pattern_nu(embedded->pattern, PatternInput::product(preps), dev));
      }
      weighted += to_double(scheme.weights[i]) * worst_input;
    }
    if (weighted > out.nu) {
      out.nu = weighted;
      out.witness = dev;
    }
  }
  return out;
}

double embedded_reject_probability(const TrappifiedPattern& embedded,
                                   const TrappifiedCanvas& canvas,
                                   const ProductState& computation_input,
                                   const PauliDeviation& deviation, int qubit_cap) {
  const MeasurementPattern& pattern = embedded.pattern;
  ProductState preps = embedded.preps;
  for (auto [v, prep] : computation_input) {
    if (v < static_cast<int>(embedded.vertex_map.size())) {
      preps[embedded.vertex_map[v]] = prep;
    }
  }
  PatternInput input = PatternInput::product(preps);

  // Entangle, then measure only the trap outputs: they are correction-free
  // with fixed bases, so their joint distribution does not depend on the
  // order relative to the computation.
  Statevector st(pattern.graph.size(), qubit_cap);
  std::vector<std::pair<Amplitude, Amplitude>> amp(pattern.graph.size());
  for (int v = 0; v < pattern.graph.size(); ++v) {
    auto it = preps.find(v);
    amp[v] = (it != preps.end()) ? it->second.amplitudes() : Prep::plus().amplitudes();
  }
  for (std::uint64_t basis = 0; basis < st.dim(); ++basis) {
    Amplitude a(1.0, 0.0);
    for (int v = 0; v < pattern.graph.size(); ++v) {
      a *= ((basis >> v) & 1ULL) ? amp[v].second : amp[v].first;
    }
    st.set_amp(basis, a);
  }
  for (auto [u, v] : pattern.graph.edge_list()) st.apply_cz(u, v);

  std::vector<int> check_vertices;
  std::uint64_t seen = 0;
  for (const auto& check : canvas.decision.parity_checks) {
    for (int v : check) {
      if (!((seen >> v) & 1ULL)) {
        seen |= 1ULL << v;
        check_vertices.push_back(v);
      }
    }
  }
  for (int v : check_vertices) {
    Angle phi = pattern.angles.count(v) ? pattern.angles.at(v) : Angle(0);
    st.apply_zrot(v, -phi.radians());
    st.apply_h(v);
    Pauli dv = deviation.at(v);
    if (dv == Pauli::X || dv == Pauli::Y) st.apply_pauli(v, Pauli::X);
  }

  // Enumerate outcomes of the check vertices only.
  double reject = 0.0;
  std::map<int, int> outcomes;
  std::function<void(Statevector, std::size_t, double)> descend =
      [&](Statevector state, std::size_t idx, double prob) {
        if (idx == check_vertices.size()) {
          if (canvas.decision.rejects(outcomes)) reject += prob;
          return;
        }
        int v = check_vertices[idx];
        double p0 = state.prob_zero(v);
        for (int b : {0, 1}) {
          double pb = b == 0 ? p0 : 1.0 - p0;
          if (pb < 1e-12) continue;
          Statevector branch = state;
          branch.project(v, b);
          outcomes[v] = b;
          descend(std::move(branch), idx + 1, prob * pb);
        }
        outcomes.erase(v);
      };
  descend(std::move(st), 0, 1.0);
  return reject;
}

}  // namespace trapkit
