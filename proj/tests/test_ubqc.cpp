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

#include "trapkit/errors.hpp"
#include "trapkit/stats.hpp"
#include "trapkit/traps.hpp"
#include "trapkit/ubqc.hpp"

using namespace trapkit;

namespace {

MeasurementPattern line3_pattern(Angle phi1, Angle phi2) {
  MeasurementPattern p;
  p.graph = path_graph(3);
  p.graph.inputs = 0b001;
  p.graph.outputs = 0b100;
  p.angles = {{0, phi1}, {1, phi2}};
  p.flow.f = {{0, 1}, {1, 2}};
  return p;
}

ClientSecrets zero_secrets(const MeasurementPattern& p) {
  ClientSecrets s;
  for (int v = 0; v < p.graph.size(); ++v) {
    s.theta[v] = Angle(0);
    s.a[v] = 0;
    s.r[v] = 0;
  }
  return s;
}

}  // namespace

TEST_CASE("all-zero secrets reduce the blind session to plain delegation") {
  MeasurementPattern p = line3_pattern(Angle(2), Angle(3));
  ClientSecrets secrets = zero_secrets(p);
  std::map<int, int> forced{{0, 0}, {1, 0}};
  Rng rng(1);
  auto session = run_blind_session(p, {{0, Prep::plus()}}, {}, rng, &secrets, &forced);
  REQUIRE(session.transcript.size() == 2);
  CHECK(session.transcript[0].vertex == 0);
  CHECK(session.transcript[0].delta == Angle(2));  // delta = phi'(0)
  CHECK(session.transcript[1].delta == Angle(3));  // all corrections zero
}

TEST_CASE("delta picks up theta and the r flip") {
  MeasurementPattern p = line3_pattern(Angle(0), Angle(1));
  ClientSecrets secrets = zero_secrets(p);
  secrets.theta[1] = Angle(2);  // pi/2
  secrets.r[1] = 1;
  std::map<int, int> forced{{0, 0}, {1, 0}};
  Rng rng(1);
  auto session = run_blind_session(p, {{0, Prep::plus()}}, {}, rng, &secrets, &forced);
  // delta(1) = phi'(1) + pi/2 + pi with phi'(1) = phi(1) on the 0-branch.
  CHECK(session.transcript[1].delta == Angle(1) + Angle(2) + Angle(4));
}

TEST_CASE("input X encryption adds a_N pi on the neighbour") {
  MeasurementPattern p = line3_pattern(Angle(0), Angle(0));
  ClientSecrets secrets = zero_secrets(p);
  secrets.a[0] = 1;
  std::map<int, int> forced{{0, 0}, {1, 0}};
  Rng rng(1);
  auto session = run_blind_session(p, {{0, Prep::plus()}}, {}, rng, &secrets, &forced);
  // a_N(1) = a(0) = 1 contributes a pi term to delta(1).
  CHECK(session.transcript[1].delta == Angle(4));
}

TEST_CASE("honest blind session equals plain delegation on every branch") {
  // Enumerate all theta pairs on the measured vertices, some r and a
  // choices, and every forced branch; compare with the plain pattern run on
  // the decoded branch.
  MeasurementPattern p = line3_pattern(Angle(1), Angle(6));
  Prep input = Prep::plus_theta(Angle(3));
  for (int t0 = 0; t0 < 8; t0 += 3) {
    for (int t1 = 0; t1 < 8; t1 += 2) {
      for (int a0 : {0, 1}) {
        for (int r_pack = 0; r_pack < 8; r_pack += 3) {
          ClientSecrets secrets = zero_secrets(p);
          secrets.theta[0] = Angle(t0);
          secrets.theta[1] = Angle(t1);
          secrets.a[0] = a0;
          secrets.r = {{0, r_pack & 1}, {1, (r_pack >> 1) & 1}, {2, (r_pack >> 2) & 1}};
          int a_n2 = a0 * 0;  // vertex 2 neighbours vertex 1 only; a(1) = 0
          secrets.theta[2] = Angle(4 * ((secrets.r[2] + a_n2) % 2));
          for (int b0 : {0, 1}) {
            for (int b1 : {0, 1}) {
              std::map<int, int> forced{{0, b0}, {1, b1}};
              Rng rng(7);
              auto blind = run_blind_session(p, {{0, input}}, {}, rng, &secrets, &forced);
              std::map<int, int> decoded{{0, b0 ^ secrets.r[0]}, {1, b1 ^ secrets.r[1]}};
              auto plain = run_pattern(p, PatternInput::product({{0, input}}),
                                       OutcomeSource::force(decoded));
              CHECK(Statevector::fidelity(blind.output_state, plain.output_state) ==
                    doctest::Approx(1.0).epsilon(1e-9));
            }
          }
        }
      }
    }
  }
}

TEST_CASE("blindness: every delta is uniform over the angle set") {
  MeasurementPattern p = line3_pattern(Angle(5), Angle(2));
  const int sessions = 16000;
  std::vector<std::uint64_t> counts0(8, 0);
  std::vector<std::uint64_t> counts1(8, 0);
  Rng rng(7);
  for (int i = 0; i < sessions; ++i) {
    auto session = run_blind_session(p, {{0, Prep::plus()}}, {}, rng);
    ++counts0[session.transcript[0].delta.k()];
    ++counts1[session.transcript[1].delta.k()];
  }
  std::vector<double> expected(8, sessions / 8.0);
  CHECK(chi2_gof_pvalue(counts0, expected) > 0.01);
  CHECK(chi2_gof_pvalue(counts1, expected) > 0.01);
}

TEST_CASE("transcript causality: angles are sent after their dependencies") {
  MeasurementPattern p = line3_pattern(Angle(1), Angle(2));
  Rng rng(9);
  auto session = run_blind_session(p, {{0, Prep::plus()}}, {}, rng);
  std::map<int, std::size_t> position;
  for (std::size_t i = 0; i < session.transcript.size(); ++i) {
    position[session.transcript[i].vertex] = i;
  }
  for (const auto& entry : session.transcript) {
    for (int j : p.s_x(entry.vertex)) CHECK(position.at(j) < position.at(entry.vertex));
    for (int j : p.s_z(entry.vertex)) CHECK(position.at(j) < position.at(entry.vertex));
  }
}

TEST_CASE("deviations against a blind trap round") {
  OpenGraph c5 = cycle_graph(5);
  auto canvas = build_standard_trap(c5, 0b00101);
  TrappifiedPattern tp = canvas_pattern(canvas, nullptr);
  Rng rng(31);

  auto reject_frequency = [&](const PauliDeviation& dev, int trials) {
    int rejects = 0;
    for (int t = 0; t < trials; ++t) {
      auto session = run_blind_session(tp.pattern, tp.preps, dev, rng);
      if (canvas.rejects(session.decoded_outcomes)) ++rejects;
    }
    return static_cast<double>(rejects) / trials;
  };

  CHECK(reject_frequency({}, 50) == 0.0);
  CHECK(reject_frequency(PauliDeviation::single(0, Pauli::X), 50) == 1.0);
  CHECK(reject_frequency(PauliDeviation::single(1, Pauli::X), 50) == 0.0);
  CHECK(reject_frequency(PauliDeviation::single(2, Pauli::Z), 50) == 0.0);
}

TEST_CASE("protocol order violations are detected") {
  MeasurementPattern p = line3_pattern(Angle(0), Angle(0));
  ServerMachine server({}, nullptr);
  CHECK_THROWS_AS(server.step(MsgAngle{0, Angle(0)}), ProtocolViolation);

  ClientSecrets secrets = zero_secrets(p);
  ClientMachine client(p, {}, secrets);
  CHECK_THROWS_AS(client.step(MsgOutcome{0, 0}), ProtocolViolation);
}

TEST_CASE("twirl cancellation for distinct Paulis") {
  CMat zero_state{{1.0, 0.0}, {0.0, 0.0}};
  PauliWord x({Pauli::X}, 0);
  PauliWord z({Pauli::Z}, 0);
  CHECK(twirl_check(x, z, zero_state) < 1e-12);

  SUBCASE("all distinct single-qubit pairs cancel") {
    std::vector<PauliWord> words;
    for (Pauli p : {Pauli::I, Pauli::X, Pauli::Y, Pauli::Z}) {
      words.push_back(PauliWord({p}, 0));
    }
    Rng rng(3);
    CMat rho = random_density_matrix(1, rng);
    for (const auto& q : words) {
      for (const auto& qp : words) {
        if (q.at(0) == qp.at(0)) continue;
        CHECK(twirl_check(q, qp, rho) < 1e-12);
      }
    }
  }

  SUBCASE("equal Paulis give the scaled conjugation, not a cancellation") {
    Rng rng(5);
    CMat rho = random_density_matrix(1, rng);
    CHECK(twirl_check(x, x, rho) < 1e-12);
  }

  SUBCASE("two-qubit random case") {
    Rng rng(7);
    CMat rho = random_density_matrix(2, rng);
    PauliWord xi({Pauli::X, Pauli::I}, 0);
    PauliWord yz({Pauli::Y, Pauli::Z}, 0);
    CHECK(twirl_check(xi, yz, rho) < 1e-12);
  }
}
