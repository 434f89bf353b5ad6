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
#include "trapkit/optimizer.hpp"

using namespace trapkit;

namespace {

std::vector<TrappifiedCanvas> standard_candidates(const OpenGraph& g) {
  std::vector<TrappifiedCanvas> out;
  for (const auto& ind : enumerate_independent_sets(g)) {
    out.push_back(build_standard_trap(g, ind.members));
  }
  return out;
}

std::vector<TrappifiedCanvas> general_candidates(const OpenGraph& g) {
  std::vector<TrappifiedCanvas> out;
  for (std::uint64_t h = 1; h < (1ULL << g.size()); ++h) {
    out.push_back(build_general_trap(g, h));
  }
  return out;
}

}  // namespace

TEST_CASE("relation of pentagon standard traps against single-X errors") {
  OpenGraph c5 = cycle_graph(5);
  std::vector<TrappifiedCanvas> tests;
  for (std::uint64_t pair : {0b00101ULL, 0b01010ULL, 0b10100ULL, 0b01001ULL, 0b10010ULL}) {
    tests.push_back(build_standard_trap(c5, pair));
  }
  std::vector<PauliDeviation> errors;
  for (int v = 0; v < 5; ++v) errors.push_back(PauliDeviation::single(v, Pauli::X));
  auto rel = build_relation(tests, DeviationSetSpec::explicit_list(errors));
  REQUIRE(rel.errors.size() == 5);  // all five columns distinct
  for (std::size_t t = 0; t < tests.size(); ++t) {
    for (std::size_t e = 0; e < rel.errors.size(); ++e) {
      int v = rel.errors[e].support.begin()->first;
      bool expected = (tests[t].h_mask >> v) & 1ULL;
      CHECK(rel.detects[t][e] == expected);
    }
  }
}

TEST_CASE("empty error set is rejected") {
  OpenGraph c5 = cycle_graph(5);
  CHECK_THROWS_AS(build_relation(standard_candidates(c5),
                                 DeviationSetSpec::explicit_list({})),
                  InvalidInput);
}

TEST_CASE("pentagon standard traps optimise to rate 2/5 on the five pairs") {
  OpenGraph c5 = cycle_graph(5);
  auto rel = build_relation(standard_candidates(c5), DeviationSetSpec::all_xy());
  auto sol = solve_distribution(rel);
  CHECK(sol.rate == Rational(2, 5));
  Rational pair_weight = 0;
  for (std::size_t t = 0; t < rel.test_labels.size(); ++t) {
    const auto& canvas = standard_candidates(c5)[t];
    if (std::popcount(canvas.h_mask) == 2) {
      CHECK(sol.weights[t] == Rational(1, 5));
      pair_weight += sol.weights[t];
    } else {
      CHECK(sol.weights[t] == 0);
    }
  }
  CHECK(pair_weight == 1);

  SUBCASE("the dual attack achieves exactly the primal rate") {
    Rational value = 0;
    for (std::size_t t = 0; t < rel.test_labels.size(); ++t) {
      for (std::size_t e = 0; e < rel.errors.size(); ++e) {
        if (rel.detects[t][e]) value += sol.weights[t] * sol.attack[e];
      }
    }
    CHECK(value == sol.rate);
    for (std::size_t t = 0; t < rel.test_labels.size(); ++t) {
      Rational detect_of_attack = 0;
      for (std::size_t e = 0; e < rel.errors.size(); ++e) {
        if (rel.detects[t][e]) detect_of_attack += sol.attack[e];
      }
      CHECK(detect_of_attack <= sol.rate);
    }
  }
}

TEST_CASE("general-trap LP optimum is 2^(n-1)/(2^n - 1)") {
  // The uniform attack over non-empty XY supports caps every test at
  // 2^(n-1)/(2^n - 1), and the uniform test distribution attains it.
  for (int n : {2, 3, 4}) {
    OpenGraph g = n == 2 ? path_graph(2) : (n == 3 ? path_graph(3) : cycle_graph(4));
    auto rel = build_relation(general_candidates(g), DeviationSetSpec::all_xy());
    auto sol = solve_distribution(rel);
    Rational expected(BigInt(1) << (n - 1), (BigInt(1) << n) - 1);
    CHECK(sol.rate == expected);
  }
}

TEST_CASE("single all-detecting test takes all the weight") {
  OpenGraph g(1);
  auto tests = general_candidates(g);  // the lone trap {0}
  auto rel = build_relation(tests, DeviationSetSpec::all_xy());
  auto sol = solve_distribution(rel);
  CHECK(sol.rate == 1);
  CHECK(sol.weights[0] == 1);
}

TEST_CASE("undetectable errors yield rate zero with a witness") {
  OpenGraph k2 = path_graph(2);
  std::vector<TrappifiedCanvas> tests{build_standard_trap(k2, 0b01)};
  auto rel = build_relation(tests, DeviationSetSpec::all_xy());
  auto sol = solve_distribution(rel);
  CHECK(sol.rate == 0);
  REQUIRE(sol.undetectable_error.has_value());
  // The witness class is not detected by the only test.
  CHECK(!rel.detects[0][*sol.undetectable_error]);
}

TEST_CASE("colouring distribution achieves 1/chi_f") {
  auto c5 = colouring_distribution(cycle_graph(5));
  CHECK(c5.rate == Rational(2, 5));
  REQUIRE(c5.distribution.sets.size() == 5);
  for (const auto& w : c5.distribution.weights) CHECK(w == Rational(1, 5));
  for (std::uint64_t set : c5.distribution.sets) CHECK(std::popcount(set) == 2);

  auto k3 = colouring_distribution(complete_graph(3));
  CHECK(k3.rate == Rational(1, 3));
  REQUIRE(k3.distribution.sets.size() == 3);
  for (std::uint64_t set : k3.distribution.sets) CHECK(std::popcount(set) == 1);

  auto edgeless = colouring_distribution(edgeless_graph(4));
  CHECK(edgeless.rate == 1);
  REQUIRE(edgeless.distribution.sets.size() == 1);
  CHECK(edgeless.distribution.sets[0] == 0b1111ULL);
}

TEST_CASE("LP rate equals 1/chi_f on assorted graphs") {
  for (const auto& g : {cycle_graph(5), cycle_graph(7), path_graph(4), complete_graph(4)}) {
    auto rel = build_relation(standard_candidates(g), DeviationSetSpec::all_xy());
    auto sol = solve_distribution(rel);
    auto frac = fractional_chromatic_number(g);
    CHECK(sol.rate == Rational(1) / frac.value);
  }
}
