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

#include <algorithm>
#include <set>

#include "trapkit/errors.hpp"
#include "trapkit/graph.hpp"
#include "trapkit/simplex.hpp"

using namespace trapkit;

namespace {

std::set<std::uint64_t> set_masks(const std::vector<IndependentSet>& sets) {
  std::set<std::uint64_t> out;
  for (const auto& s : sets) out.insert(s.members);
  return out;
}

}  // namespace

TEST_CASE("independent sets of C5 include the five optimal pairs") {
  OpenGraph c5 = cycle_graph(5);
  auto sets = enumerate_independent_sets(c5);
  auto masks = set_masks(sets);
  // 5 singletons + 5 pairs, nothing bigger in C5.
  CHECK(sets.size() == 10);
  for (std::uint64_t pair : {0b00101ULL, 0b01010ULL, 0b10100ULL, 0b01001ULL, 0b10010ULL}) {
    CHECK(masks.count(pair) == 1);
  }
  for (const auto& s : sets) CHECK(c5.is_independent(s.members));
}

TEST_CASE("independent sets of trivial graphs") {
  auto single = enumerate_independent_sets(OpenGraph(1));
  REQUIRE(single.size() == 1);
  CHECK(single[0].members == 1ULL);

  auto k3 = enumerate_independent_sets(complete_graph(3));
  CHECK(set_masks(k3) == std::set<std::uint64_t>{1, 2, 4});
}

TEST_CASE("enumeration cap") {
  OpenGraph big(30);
  CHECK_THROWS_AS(enumerate_independent_sets(big), CapExceeded);
  CHECK_THROWS_AS(chromatic_number(big), CapExceeded);
}

TEST_CASE("chromatic numbers") {
  CHECK(chromatic_number(cycle_graph(5)) == 3);
  CHECK(chromatic_number(edgeless_graph(7)) == 1);
  CHECK(chromatic_number(complete_graph(4)) == 4);
  CHECK(chromatic_number(cycle_graph(6)) == 2);
  CHECK(chromatic_number(petersen_graph()) == 3);
}

TEST_CASE("clique numbers") {
  CHECK(clique_number(complete_graph(4)) == 4);
  CHECK(clique_number(cycle_graph(5)) == 2);
  CHECK(clique_number(edgeless_graph(3)) == 1);
}

TEST_CASE("fractional chromatic number is exact") {
  auto c5 = fractional_chromatic_number(cycle_graph(5));
  CHECK(c5.value == Rational(5, 2));

  auto k3 = fractional_chromatic_number(complete_graph(3));
  CHECK(k3.value == Rational(3));

  auto petersen = fractional_chromatic_number(petersen_graph());
  CHECK(petersen.value == Rational(5, 2));
}

TEST_CASE("fractional colouring certificate covers every vertex") {
  OpenGraph g = cycle_graph(7);
  auto res = fractional_chromatic_number(g);
  CHECK(res.value == Rational(7, 3));
  Rational total = 0;
  for (const auto& w : res.colouring.weights) {
    CHECK(w >= 0);
    total += w;
  }
  CHECK(total == res.value);
  for (int v = 0; v < g.size(); ++v) {
    Rational cover = 0;
    for (std::size_t i = 0; i < res.colouring.sets.size(); ++i) {
      if ((res.colouring.sets[i] >> v) & 1ULL) cover += res.colouring.weights[i];
    }
    CHECK(cover >= 1);
  }
  for (std::uint64_t members : res.colouring.sets) {
    CHECK(g.is_independent(members));
  }
}

TEST_CASE("sandwich: omega <= chi_f <= chi on small connected graphs") {
  for (const auto& g : connected_graphs_up_to(5)) {
    auto frac = fractional_chromatic_number(g);
    CHECK(Rational(clique_number(g)) <= frac.value);
    CHECK(frac.value <= Rational(chromatic_number(g)));
  }
}

TEST_CASE("connected graph counts match the known sequence") {
  auto graphs = connected_graphs_up_to(6);
  int counts[7] = {0, 0, 0, 0, 0, 0, 0};
  for (const auto& g : graphs) ++counts[g.size()];
  CHECK(counts[1] == 1);
  CHECK(counts[2] == 1);
  CHECK(counts[3] == 2);
  CHECK(counts[4] == 6);
  CHECK(counts[5] == 21);
  CHECK(counts[6] == 112);
  for (const auto& g : graphs) CHECK(g.is_connected());
}

TEST_CASE("simplex solves a tiny LP with exact duals") {
  // max x + y st x <= 1, y <= 2, x + y <= 2.5
  std::vector<std::vector<Rational>> a{{1, 0}, {0, 1}, {1, 1}};
  std::vector<Rational> b{1, 2, Rational(5, 2)};
  std::vector<Rational> c{1, 1};
  auto sol = simplex_max(a, b, c);
  CHECK(sol.value == Rational(5, 2));
  Rational dual_value = 0;
  for (std::size_t i = 0; i < b.size(); ++i) dual_value += sol.dual[i] * b[i];
  CHECK(dual_value == sol.value);
}
