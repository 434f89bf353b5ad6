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

#include <cmath>

#include "trapkit/errors.hpp"
#include "trapkit/mbqc.hpp"
#include "trapkit/stats.hpp"
#include "trapkit/tableau.hpp"

using namespace trapkit;

namespace {

// The running example: three vertices in a line, first is input, last is
// output, flow f(0)=1, f(1)=2.
MeasurementPattern line3_pattern(Angle phi1, Angle phi2) {
  MeasurementPattern p;
  p.graph = path_graph(3);
  p.graph.inputs = 0b001;
  p.graph.outputs = 0b100;
  p.angles = {{0, phi1}, {1, phi2}};
  p.flow.f = {{0, 1}, {1, 2}};
  return p;
}

// Expected output state of the line pattern on branch (b0, b1):
// qubit 3 holds X^{b1} Z^{b0} H Z(-phi'_1) H Z(-phi'_0) |psi> before
// corrections; with corrections applied the state is H Z(-phi1) H Z(-phi0)
// |psi> on every branch.
Statevector line3_reference(Angle phi1, Angle phi2, const Prep& input) {
  Statevector st(1);
  auto [a0, a1] = input.amplitudes();
  st.set_amp(0, a0);
  st.set_amp(1, a1);
  st.apply_zrot(0, -phi1.radians());
  st.apply_h(0);
  st.apply_zrot(0, -phi2.radians());
  st.apply_h(0);
  return st;
}

}  // namespace

TEST_CASE("flow validation on the three-vertex line") {
  MeasurementPattern p = line3_pattern(Angle(0), Angle(0));
  CHECK(validate_flow(p).empty());

  SUBCASE("non-edge flow is reported") {
    p.flow.f = {{0, 2}, {1, 2}};
    auto violations = validate_flow(p);
    CHECK(!violations.empty());
  }
  SUBCASE("flow into an input is reported") {
    p.flow.f = {{1, 0}};
    CHECK(!validate_flow(p).empty());
  }
  SUBCASE("non-injective flow is reported") {
    p.graph = path_graph(3);
    p.graph.inputs = 0b001;
    p.graph.outputs = 0b100;
    p.flow.f = {{0, 1}, {2, 1}};
    CHECK(!validate_flow(p).empty());
  }
}

TEST_CASE("flow validation on a 2x2 grid with row-wise flow") {
  MeasurementPattern p;
  p.graph = cluster_graph(2, 2);
  // vertices: (r,c) -> c*2+r: 0=(0,0) 1=(1,0) 2=(0,1) 3=(1,1)
  p.graph.inputs = 0b0011;
  p.graph.outputs = 0b1100;
  p.angles = {{0, Angle(1)}, {1, Angle(2)}};
  p.flow.f = {{0, 2}, {1, 3}};
  CHECK(validate_flow(p).empty());
}

TEST_CASE("pattern determinism: all forced branches give the same output") {
  for (int k1 : {0, 1, 3}) {
    for (int k2 : {0, 2, 5}) {
      MeasurementPattern p = line3_pattern(Angle(k1), Angle(k2));
      PatternInput input = PatternInput::product({{0, Prep::plus_theta(Angle(3))}});
      Statevector reference = line3_reference(Angle(k1), Angle(k2), Prep::plus_theta(Angle(3)));
      for (int b0 : {0, 1}) {
        for (int b1 : {0, 1}) {
          std::map<int, int> forced{{0, b0}, {1, b1}};
          auto run = run_pattern(p, input, OutcomeSource::force(forced));
          CHECK(run.output_state.num_qubits() == 1);
          CHECK(Statevector::fidelity(run.output_state, reference) ==
                doctest::Approx(1.0).epsilon(1e-9));
        }
      }
    }
  }
}

TEST_CASE("line with zero angles and plus input returns plus") {
  MeasurementPattern p = line3_pattern(Angle(0), Angle(0));
  PatternInput input = PatternInput::product({{0, Prep::plus()}});
  std::map<int, int> forced{{0, 0}, {1, 0}};
  auto run = run_pattern(p, input, OutcomeSource::force(forced));
  Statevector plus(1);
  plus.set_amp(0, {0.70710678118654752440, 0});
  plus.set_amp(1, {0.70710678118654752440, 0});
  CHECK(Statevector::fidelity(run.output_state, plus) == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("run_pattern keeps the state normalised") {
  Rng rng(7);
  MeasurementPattern p = line3_pattern(Angle(1), Angle(5));
  PatternInput input = PatternInput::product({{0, Prep::plus_i()}});
  auto run = run_pattern(p, input, OutcomeSource::sample(rng));
  CHECK(run.output_state.norm() == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("statevector cap is enforced") {
  MeasurementPattern p;
  p.graph = OpenGraph(18);
  CHECK_THROWS_AS(run_pattern(p, PatternInput{}, OutcomeSource::force({})), CapExceeded);
}

TEST_CASE("standard trap canvas accepts deterministically") {
  // |+> at the centre of a star, |0> dummies around it, everything measured
  // in the X basis: the centre outcome is 0 with probability 1.
  MeasurementPattern p;
  p.graph = OpenGraph(4);
  p.graph.add_edge(0, 1);
  p.graph.add_edge(0, 2);
  p.graph.add_edge(0, 3);
  for (int v = 0; v < 4; ++v) p.angles[v] = Angle(0);
  ProductState sigma{{0, Prep::plus()}, {1, Prep::zero()}, {2, Prep::zero()}, {3, Prep::zero()}};

  Rng rng(3);
  for (int trial = 0; trial < 20; ++trial) {
    auto outcomes = run_clifford_pattern(p, sigma, OutcomeSource::sample(rng));
    CHECK(outcomes.at(0) == 0);
  }

  SUBCASE("computational-frame X deviation on the trap flips it always") {
    for (int trial = 0; trial < 20; ++trial) {
      auto outcomes = run_clifford_pattern(p, sigma, OutcomeSource::sample(rng),
                                           PauliDeviation::single(0, Pauli::X));
      CHECK(outcomes.at(0) == 1);
    }
  }
  SUBCASE("Z deviation on the trap is invisible") {
    for (int trial = 0; trial < 20; ++trial) {
      auto outcomes = run_clifford_pattern(p, sigma, OutcomeSource::sample(rng),
                                           PauliDeviation::single(0, Pauli::Z));
      CHECK(outcomes.at(0) == 0);
    }
  }
}

TEST_CASE("tableau matches statevector on Clifford patterns") {
  // A 6-qubit Clifford pattern with mixed preparations and angles; compare
  // empirical tableau outcome frequencies against exact statevector branch
  // probabilities with a chi-square test.
  MeasurementPattern p;
  p.graph = cluster_graph(2, 3);
  for (int v = 0; v < 6; ++v) p.angles[v] = Angle((v % 4) * 2);
  p.classical_outputs = 0b111111;
  ProductState preps{{0, Prep::plus()},  {1, Prep::zero()}, {2, Prep::plus_i()},
                     {3, Prep::minus()}, {4, Prep::one()},  {5, Prep::minus_i()}};

  auto exact = output_distribution(p, PatternInput::product(preps));

  const int samples = 20000;
  std::vector<std::uint64_t> observed(64, 0);
  Rng rng(99);
  for (int i = 0; i < samples; ++i) {
    auto outcomes = run_clifford_pattern(p, preps, OutcomeSource::sample(rng));
    std::uint64_t packed = 0;
    for (auto [v, b] : outcomes) {
      if (b) packed |= 1ULL << v;
    }
    ++observed[packed];
  }
  std::vector<double> expected(64, 0.0);
  for (auto [key, prob] : exact) expected[key] = prob * samples;
  double pvalue = chi2_gof_pvalue(observed, expected);
  CHECK(pvalue > 0.01);
}

TEST_CASE("forced outcomes against a deterministic measurement throw") {
  MeasurementPattern p;
  p.graph = OpenGraph(2);
  p.graph.add_edge(0, 1);
  p.angles = {{0, Angle(0)}, {1, Angle(0)}};
  ProductState sigma{{0, Prep::plus()}, {1, Prep::zero()}};
  std::map<int, int> forced{{0, 1}, {1, 0}};
  CHECK_THROWS_AS(run_clifford_pattern(p, sigma, OutcomeSource::force(forced)), InvalidInput);
}

TEST_CASE("non-Clifford angle is rejected by the tableau back-end") {
  MeasurementPattern p;
  p.graph = OpenGraph(1);
  p.angles = {{0, Angle(1)}};
  CHECK_THROWS_AS(run_clifford_pattern(p, {{0, Prep::plus()}}, OutcomeSource::force({{0, 0}})),
                  NotClifford);
}
