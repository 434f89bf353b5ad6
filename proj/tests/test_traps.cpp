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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <bit>

#include "trapkit/errors.hpp"
#include "trapkit/traps.hpp"

using namespace trapkit;

namespace {

// Run a canvas honestly (or under a deviation) on the tableau back-end and
// return the decision bit. Unspecified vertices are pinned to angle 0.
bool simulate_reject(const TrappifiedCanvas& canvas, const PauliDeviation& dev, Rng& rng) {
  TrappifiedPattern tp = canvas_pattern(canvas, nullptr);
  auto outcomes = run_clifford_pattern(tp.pattern, tp.preps, OutcomeSource::sample(rng), dev);
  return canvas.rejects(outcomes);
}

}  // namespace

TEST_CASE("standard trap on C5 matches the worked example") {
  OpenGraph c5 = cycle_graph(5);
  auto canvas = build_standard_trap(c5, 0b00101);  // H = {0,2}
  CHECK(canvas.vt == 0b11111);                     // N({0,2}) = {1,3,4}
  CHECK(canvas.sigma.at(0) == Prep::plus());
  CHECK(canvas.sigma.at(1) == Prep::zero());
  CHECK(canvas.sigma.at(2) == Prep::plus());
  CHECK(canvas.sigma.at(3) == Prep::zero());
  CHECK(canvas.sigma.at(4) == Prep::zero());
  REQUIRE(canvas.decision.parity_checks.size() == 2);
  CHECK(canvas.decision.parity_checks[0] == std::vector<int>{0});
  CHECK(canvas.decision.parity_checks[1] == std::vector<int>{2});
}

TEST_CASE("standard trap with the centre of a 3x3 grid") {
  OpenGraph grid = cluster_graph(3, 3);
  int centre = cluster_vertex(3, 1, 1);
  auto canvas = build_standard_trap(grid, 1ULL << centre);
  CHECK(std::popcount(canvas.vt) == 5);  // centre plus its four neighbours
  CHECK(canvas.sigma.at(centre) == Prep::plus());
  for (int v = 0; v < grid.size(); ++v) {
    if (v != centre && ((canvas.vt >> v) & 1ULL)) CHECK(canvas.sigma.at(v) == Prep::zero());
  }
}

TEST_CASE("degenerate trap sets are rejected") {
  OpenGraph c5 = cycle_graph(5);
  CHECK_THROWS_AS(build_standard_trap(c5, 0), InvalidInput);
  CHECK_THROWS_AS(build_standard_trap(c5, 0b00011), InvalidInput);  // adjacent pair
  CHECK_THROWS_AS(build_general_trap(c5, 0), InvalidInput);
}

TEST_CASE("general trap on K2 prepares Y eigenstates") {
  OpenGraph k2 = path_graph(2);
  auto canvas = build_general_trap(k2, 0b11);
  CHECK(canvas.sigma.at(0) == Prep::plus_i());
  CHECK(canvas.sigma.at(1) == Prep::plus_i());
  REQUIRE(canvas.decision.parity_checks.size() == 1);
  CHECK(canvas.decision.parity_checks[0] == std::vector<int>{0, 1});
}

TEST_CASE("general trap on a path with endpoints") {
  // S^0 S^2 on the path 0-1-2 multiplies to +X (x) I (x) X: the middle Z's
  // cancel, so vertex 1 is a free site prepared |+>.
  OpenGraph p3 = path_graph(3);
  PauliWord product = vertex_stabiliser(p3, 0) * vertex_stabiliser(p3, 2);
  CHECK(product.phase() == 0);
  CHECK(product.at(0) == Pauli::X);
  CHECK(product.at(1) == Pauli::I);
  CHECK(product.at(2) == Pauli::X);

  auto canvas = build_general_trap(p3, 0b101);
  CHECK(canvas.sigma.at(0) == Prep::plus());
  CHECK(canvas.sigma.at(1) == Prep::plus());
  CHECK(canvas.sigma.at(2) == Prep::plus());
}

TEST_CASE("general trap on an isolated vertex reduces to the standard trap") {
  OpenGraph g(3);
  g.add_edge(1, 2);  // vertex 0 isolated
  auto general = build_general_trap(g, 0b001);
  auto standard = build_standard_trap(g, 0b001);
  CHECK(general.sigma.at(0) == Prep::plus());
  CHECK(standard.sigma.at(0) == Prep::plus());
  CHECK(general.decision.parity_checks == std::vector<std::vector<int>>{{0}});
}

TEST_CASE("tensor-product preparation of stabiliser eigenstates") {
  PauliWord xz({Pauli::X, Pauli::Z}, 0);
  auto plus = prepare_stabiliser_product(xz);
  CHECK(plus.at(0) == Prep::plus());
  CHECK(plus.at(1) == Prep::zero());

  PauliWord minus_xz({Pauli::X, Pauli::Z}, 2);
  auto minus = prepare_stabiliser_product(minus_xz);
  CHECK(minus.at(0) == Prep::minus());
  CHECK(minus.at(1) == Prep::zero());

  PauliWord y({Pauli::Y}, 0);
  CHECK(prepare_stabiliser_product(y).at(0) == Prep::plus_i());

  PauliWord imaginary({Pauli::X}, 1);  // squares to -I
  CHECK_THROWS_AS(prepare_stabiliser_product(imaginary), InvalidInput);
}

TEST_CASE("overlap condition") {
  PauliWord a({Pauli::X, Pauli::Z, Pauli::I}, 0);
  PauliWord b({Pauli::I, Pauli::Z, Pauli::X}, 0);
  CHECK(check_overlap_condition({a, b}));

  PauliWord c({Pauli::X, Pauli::I}, 0);
  PauliWord d({Pauli::Z, Pauli::I}, 0);
  CHECK(!check_overlap_condition({c, d}));
}

TEST_CASE("vertex stabilisers of an independent set satisfy the overlap condition") {
  for (const auto& g : connected_graphs_up_to(5)) {
    for (const auto& ind : enumerate_independent_sets(g)) {
      std::vector<PauliWord> words;
      for (int v = 0; v < g.size(); ++v) {
        if ((ind.members >> v) & 1ULL) words.push_back(vertex_stabiliser(g, v));
      }
      CHECK(check_overlap_condition(words));
    }
  }
}

TEST_CASE("constructed canvases accept honest runs with probability 1") {
  Rng rng(11);
  for (const auto& g : {cycle_graph(5), path_graph(4), complete_graph(3)}) {
    for (const auto& ind : enumerate_independent_sets(g)) {
      auto canvas = build_standard_trap(g, ind.members);
      for (int t = 0; t < 5; ++t) CHECK(!simulate_reject(canvas, {}, rng));
    }
    for (std::uint64_t h = 1; h < (1ULL << g.size()); ++h) {
      auto canvas = build_general_trap(g, h);
      for (int t = 0; t < 3; ++t) CHECK(!simulate_reject(canvas, {}, rng));
    }
  }
}

TEST_CASE("standard trap detection predicate vs simulation") {
  Rng rng(23);
  OpenGraph c5 = cycle_graph(5);
  auto canvas = build_standard_trap(c5, 0b00101);
  // X on vertex 1 (a dummy): undetected.
  CHECK(!simulate_reject(canvas, PauliDeviation::single(1, Pauli::X), rng));
  // X on vertex 0 (a trap): detected.
  CHECK(simulate_reject(canvas, PauliDeviation::single(0, Pauli::X), rng));
  // Z anywhere: never detected.
  for (int v = 0; v < 5; ++v) {
    CHECK(!simulate_reject(canvas, PauliDeviation::single(v, Pauli::Z), rng));
  }
}

TEST_CASE("general trap parity predicate vs simulation") {
  Rng rng(29);
  OpenGraph c5 = cycle_graph(5);
  auto canvas = build_general_trap(c5, 0b01011);  // H = {0,1,3}
  // Odd overlap with H: detected.
  PauliDeviation one;
  one.set(0, Pauli::X);
  CHECK(simulate_reject(canvas, one, rng));
  // Even overlap: undetected.
  PauliDeviation two;
  two.set(0, Pauli::X);
  two.set(1, Pauli::Y);
  CHECK(!simulate_reject(canvas, two, rng));
  // Off-H deviations: undetected.
  CHECK(!simulate_reject(canvas, PauliDeviation::single(2, Pauli::X), rng));
}

TEST_CASE("uniform general-trap scheme covers all subsets") {
  OpenGraph k2 = path_graph(2);
  auto scheme = uniform_general_trap_scheme(k2);
  CHECK(scheme.canvases.size() == 4);  // trivial test + three subsets
  Rational total = 0;
  for (const auto& w : scheme.weights) {
    CHECK(w == Rational(1, 4));
    total += w;
  }
  CHECK(total == 1);
  validate_scheme(scheme);
}

TEST_CASE("composition of schemes") {
  OpenGraph c5 = cycle_graph(5);
  auto a = single_canvas_scheme(build_standard_trap(c5, 0b00101));
  auto b = single_canvas_scheme(build_standard_trap(c5, 0b01010));
  auto mixed = compose_schemes({a, b}, {Rational(1, 2), Rational(1, 2)});
  CHECK(mixed.canvases.size() == 2);
  CHECK(mixed.weights[0] == Rational(1, 2));

  auto other = single_canvas_scheme(build_standard_trap(path_graph(3), 0b001));
  CHECK_THROWS_AS(compose_schemes({a, other}, {Rational(1, 2), Rational(1, 2)}),
                  InvalidInput);
}

TEST_CASE("pentagon scheme from the five optimal pairs") {
  OpenGraph c5 = cycle_graph(5);
  FractionalColouring family;
  for (std::uint64_t pair : {0b00101ULL, 0b01010ULL, 0b10100ULL, 0b01001ULL, 0b10010ULL}) {
    family.sets.push_back(pair);
    family.weights.push_back(Rational(1, 5));
  }
  auto scheme = standard_trap_scheme(c5, family);
  validate_scheme(scheme);
  CHECK(scheme.canvases.size() == 5);
}

TEST_CASE("dummy-isolated embedding of a line computation") {
  // 1x4 wire into a 4x4 cluster with the trap block in the top-left corner.
  MeasurementPattern wire;
  wire.graph = cluster_graph(1, 4);
  wire.graph.inputs = 0b0001;
  wire.graph.outputs = 0b1000;
  wire.angles = {{0, Angle(1)}, {1, Angle(2)}, {2, Angle(7)}};
  wire.flow.f = {{0, 1}, {1, 2}, {2, 3}};
  REQUIRE(validate_flow(wire).empty());

  auto canvas = cluster_trap_canvas(4, 4, false, 0, 0);
  Rng rng(5);
  auto embedded = embed_dummy_isolated(wire, canvas, &rng);
  REQUIRE(embedded.has_value());
  CHECK(validate_flow(embedded->pattern).empty());
  CHECK(embedding_is_proper(embedded->pattern, canvas.vt));

  // Row 2 is fully |0>: the block's bottom row plus the added dummies.
  for (int c = 0; c < 4; ++c) {
    CHECK(embedded->preps.at(cluster_vertex(4, 2, c)) == Prep::zero());
  }

  SUBCASE("honest run accepts the trap and reproduces the computation") {
    PatternInput plain_in = PatternInput::product({{0, Prep::plus_theta(Angle(3))}});
    Rng plain_rng(17);
    auto plain = run_pattern(wire, plain_in, OutcomeSource::sample(plain_rng));

    ProductState preps = embedded->preps;
    preps[embedded->vertex_map[0]] = Prep::plus_theta(Angle(3));
    Rng host_rng(17);
    // Same per-branch correction structure: force the computation row onto
    // the branch the plain run took and let everything else be sampled.
    std::map<int, int> forced;
    for (auto [v, b] : plain.outcomes) forced[embedded->vertex_map[v]] = b;
    // Sample the non-computation vertices: split sources are not supported,
    // so force them to 0 (they are dummies/random X-measurements, all of
    // which admit either outcome).
    for (int v = 0; v < embedded->pattern.graph.size(); ++v) {
      std::uint64_t measured = embedded->pattern.measured_mask();
      if (((measured >> v) & 1ULL) && !forced.count(v)) {
        bool trap_bit = (canvas.h_mask >> v) & 1ULL;
        forced[v] = 0;
        (void)trap_bit;
      }
    }
    auto host = run_pattern(embedded->pattern, PatternInput::product(preps),
                            OutcomeSource::force(forced));
    std::map<int, int> trap_outcomes;
    for (const auto& check : canvas.decision.parity_checks) {
      for (int v : check) trap_outcomes[v] = host.outcomes.at(v);
    }
    CHECK(!canvas.rejects(trap_outcomes));
    CHECK(Statevector::fidelity(host.output_state, plain.output_state) ==
          doctest::Approx(1.0).epsilon(1e-9));
  }
}

TEST_CASE("embedding failure cases") {
  auto canvas = cluster_trap_canvas(4, 4, false, 0, 0);
  Rng rng(5);

  SUBCASE("too-large computation returns nothing") {
    MeasurementPattern big;
    big.graph = cluster_graph(2, 4);
    for (int v = 0; v < 8; ++v) big.angles[v] = Angle(0);
    CHECK(!embed_dummy_isolated(big, canvas, &rng).has_value());
  }
  SUBCASE("empty computation returns the canvas unchanged") {
    MeasurementPattern empty;
    auto out = embed_dummy_isolated(empty, canvas, &rng);
    REQUIRE(out.has_value());
    CHECK(out->pattern.graph.size() == 16);
    CHECK(out->computation_vertices == 0);
  }
}
