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

#include "trapkit/compiler.hpp"
#include "trapkit/errors.hpp"

using namespace trapkit;

namespace {

TrappifiedScheme pentagon_scheme() {
  OpenGraph c5 = cycle_graph(5);
  FractionalColouring family;
  for (std::uint64_t pair : {0b00101ULL, 0b01010ULL, 0b10100ULL, 0b01001ULL, 0b10010ULL}) {
    family.sets.push_back(pair);
    family.weights.push_back(Rational(1, 5));
  }
  return standard_trap_scheme(c5, family);
}

}  // namespace

TEST_CASE("compiler parameter validation") {
  CompilerParams bad{10, 4, 5, 1, 0.0};  // n != d+s
  CHECK_THROWS_AS(bad.validate(), InvalidInput);
  CompilerParams zero_w{2, 1, 1, 0, 0.0};
  CHECK_THROWS_AS(zero_w.validate(), InvalidInput);
  CompilerParams big_c{2, 1, 1, 1, 0.5};
  CHECK_THROWS_AS(big_c.validate(), InvalidInput);
  CompilerParams ok{2, 1, 1, 1, 0.0};
  CHECK_NOTHROW(ok.validate());
}

TEST_CASE("smallest amplified instance samples both layouts") {
  auto compiled = compile_amplified(pentagon_scheme(), {2, 1, 1, 1, 0.0});
  int first = 0;
  Rng rng(5);
  const int draws = 4000;
  for (int i = 0; i < draws; ++i) {
    auto assignment = compiled.sample_assignment(rng);
    REQUIRE(assignment.test_rounds.size() == 1);
    if (assignment.test_rounds[0] == 0) ++first;
  }
  CHECK(first > draws / 2 - 200);
  CHECK(first < draws / 2 + 200);
}

TEST_CASE("canvas space size is counted, not materialised") {
  auto compiled = compile_amplified(pentagon_scheme(), {10, 5, 5, 1, 0.0});
  // C(10,5) * 5^5
  CHECK(compiled.canvas_space_size() == BigInt(252) * 3125);
}

TEST_CASE("majority vote decoding") {
  CHECK(majority_vote({1, 1, 0}, 1) == 1ULL);
  CHECK(majority_vote({1, 0, 0, 0, 1}, 1) == 0ULL);
  CHECK(!majority_vote({1, 0}, 1).has_value());  // tie reported as failure
  CHECK(majority_vote({0b10, 0b11, 0b10}, 2) == 0b10ULL);
  // Corrects up to ceil(d/2)-1 corruptions.
  for (int d : {3, 5, 7, 9, 11}) {
    int budget = (d + 1) / 2 - 1;
    std::vector<std::uint64_t> outputs(d, 0);
    for (int i = 0; i < budget; ++i) outputs[i] = 1;
    CHECK(majority_vote(outputs, 1) == 0ULL);
  }
}

TEST_CASE("amplified bounds match direct evaluation at fixed chi") {
  BoundInputs in;
  in.eps = 0.5;
  in.delta = 0.0;
  in.k_eps = 450;
  in.k_delta = 100;
  in.k_nu = 450;
  in.p_delta = 0.05;
  CompilerParams params{1000, 500, 500, 50, 0.0};  // w/s = 0.1
  auto bounds = bounds_amplified(in, params);

  // Direct evaluation at chi = 0.2 is an upper bound for the minimum.
  double chi = 0.2;
  double s = params.s;
  double x = in.k_eps / params.n - chi;
  double direct = std::exp(-2 * chi * chi * s) +
                  std::exp(-2 * std::pow(x * (1 - in.eps) - 0.1, 2) / x * s);
  CHECK(bounds.eps_prime.value <= direct + 1e-12);
  CHECK(bounds.eps_prime.value > 0.0);
  CHECK(bounds.eps_prime.chi >= 0.0);

  // delta = 0 degenerates the second constraint; the bound is still finite
  // and positive.
  CHECK(bounds.delta_prime.value > 0.0);
  CHECK(bounds.delta_prime.value < 1.0);

  double gap = in.p_delta - in.k_delta / params.n;
  CHECK(bounds.p_delta_prime == doctest::Approx(std::exp(-2 * gap * gap * params.n)));
}

TEST_CASE("admissibility violations are named") {
  BoundInputs in;
  in.eps = 0.5;
  in.k_delta = 100;
  in.k_nu = 450;
  in.p_delta = 0.05;
  CompilerParams params{1000, 500, 500, 50, 0.0};
  // k_eps/n exactly w/(s(1-eps)) = 0.1/(0.5) = 0.2 -> k_eps = 200: boundary.
  in.k_eps = 200;
  CHECK_THROWS_WITH_AS(bounds_amplified(in, params),
                       "violated: w/(s(1-eps)) < k_eps/n", Inadmissible);
  in.k_eps = 500;
  in.k_nu = 400;  // now k_eps > k_nu
  CHECK_THROWS_AS(bounds_amplified(in, params), Inadmissible);
}

TEST_CASE("parallel bounds evaluate the single-exponential forms") {
  BoundInputs in;
  in.eps = 0.5;
  in.delta = 0.0;
  in.nu = 0.0;
  in.k_eps = 20;
  in.k_delta = 1;
  in.k_nu = 0;
  auto bounds = bounds_parallel(in, 20, 5, 10.0);
  CHECK(bounds.eps == doctest::Approx(std::exp(-2.5)).epsilon(1e-12));
  // nu = 0, f = d/2 = 10, k_nu = 0: exp(-2 (20 - 10)^2 / 20).
  CHECK(bounds.nu == doctest::Approx(std::exp(-10.0)).epsilon(1e-12));

  in.k_eps = 10;  // k_eps (1-eps) = 5 = w: boundary
  CHECK_THROWS_AS(bounds_parallel(in, 20, 5, 10.0), Inadmissible);
}

TEST_CASE("mixture parameters") {
  auto mix = mixture_parameters(Rational(1, 2), Rational(0), Rational(1, 5), 6, 4);
  CHECK(mix.eps == 1 - Rational(1, 2) * Rational(4, 10));
  CHECK(mix.delta == 0);
  CHECK(mix.nu == 1 - Rational(4, 5) * Rational(6, 10));
}

TEST_CASE("exact tails") {
  // Hypergeometric(10, 5, 5): P[X <= 1] = (C(5,0)C(5,5)+C(5,1)C(5,4))/C(10,5).
  CHECK(hypergeometric_tail_le({10, 5, 5}, 1) == Rational(26, 252));
  CHECK(hypergeometric_tail_ge({10, 5, 5}, 0) == 1);
  CHECK(binomial_tail_ge({7, Rational(0)}, 1) == 0);
  CHECK(binomial_tail_ge({4, Rational(1, 2)}, 2) == Rational(11, 16));
  CHECK(binomial_tail_le({4, Rational(1, 2)}, 4) == 1);
  CHECK_THROWS_AS(hypergeometric_tail_le({20000, 5, 5}, 1), CapExceeded);
}

TEST_CASE("Hoeffding terms dominate the exact tails") {
  // The two building blocks of the amplification theorem, checked exactly
  // on a few spot instances (the acceptance suite randomises this).
  for (long n : {40L, 100L}) {
    for (long k : {n / 2, 3 * n / 4}) {
      long s = n / 2;
      for (double chi : {0.05, 0.1, 0.2}) {
        double mean_frac = static_cast<double>(k) / n;
        long x = static_cast<long>(std::floor((mean_frac - chi) * s));
        Rational exact = hypergeometric_tail_le({n, k, s}, x);
        CHECK(to_double(exact) <= std::exp(-2 * chi * chi * s) + 1e-12);
      }
    }
  }
  for (long m : {30L, 101L}) {
    Rational p(1, 3);
    for (double t : {0.1, 0.25}) {
      long x = static_cast<long>(std::floor((to_double(p) - t) * m));
      Rational exact = binomial_tail_le({m, p}, x);
      CHECK(to_double(exact) <= std::exp(-2 * t * t * m) + 1e-12);
    }
  }
}

TEST_CASE("parallel compiler requires an embedding scheme") {
  CHECK_THROWS_AS(compile_parallel(pentagon_scheme(), 3, 1), InvalidInput);
  TrappifiedScheme cluster = single_canvas_scheme(cluster_trap_canvas(4, 3, false, 0, 0));
  cluster.embedding = EmbeddingKind::DummyIsolated;
  auto compiled = compile_parallel(cluster, 3, 1);
  CHECK(compiled.kind == CompiledKind::Parallel);
  Rng rng(3);
  CHECK(compiled.sample_parallel(rng).size() == 3);
}
