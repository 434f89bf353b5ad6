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

#include "trapkit/compiler.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "trapkit/errors.hpp"

namespace trapkit {

void CompilerParams::validate() const {
  if (n != d + s) throw InvalidInput("bad params: n != d + s");
  if (d < 0 || s < 1) throw InvalidInput("bad params: need s >= 1, d >= 0");
  if (w < 1 || w > s) {
    // w = 0 would reject every run (the failed-test count is always >= 0).
    throw InvalidInput("bad params: threshold w must satisfy 1 <= w <= s");
  }
  if (c < 0.0 || c >= 0.5) throw InvalidInput("bad params: need 0 <= c < 1/2");
}

RoundAssignment CompiledScheme::sample_assignment(Rng& rng) const {
  if (kind == CompiledKind::Parallel) {
    throw InvalidInput("parallel schemes have no test/computation split");
  }
  RoundAssignment out;
  // Uniform size-s subset of [n] by partial Fisher-Yates.
  std::vector<int> positions(params.n);
  for (int i = 0; i < params.n; ++i) positions[i] = i;
  for (int i = 0; i < params.s; ++i) {
    int j = i + static_cast<int>(random_below(rng, params.n - i));
    std::swap(positions[i], positions[j]);
  }
  out.test_rounds.assign(positions.begin(), positions.begin() + params.s);
  std::sort(out.test_rounds.begin(), out.test_rounds.end());
  for (int round : out.test_rounds) {
    out.canvas_choice[round] = base.sample_index(rng);
  }
  return out;
}

std::vector<std::size_t> CompiledScheme::sample_parallel(Rng& rng) const {
  if (kind != CompiledKind::Parallel) {
    throw InvalidInput("per-round canvas draws are a parallel-compiler notion");
  }
  std::vector<std::size_t> draws(params.n);
  for (auto& d : draws) d = base.sample_index(rng);
  return draws;
}

BigInt CompiledScheme::canvas_space_size() const {
  BigInt per_test(base.canvases.size());
  BigInt space = binomial(params.n, params.s);
  for (int i = 0; i < params.s; ++i) space *= per_test;
  return space;
}

CompiledScheme compile_amplified(TrappifiedScheme base, CompilerParams params) {
  params.validate();
  validate_scheme(base);
  CompiledScheme out;
  out.base = std::move(base);
  out.params = params;
  out.kind = CompiledKind::Amplified;
  return out;
}

CompiledScheme compile_bqp(TrappifiedScheme base, CompilerParams params) {
  CompiledScheme out = compile_amplified(std::move(base), params);
  out.kind = CompiledKind::Bqp;
  out.majority_vote = true;
  return out;
}

CompiledScheme compile_parallel(TrappifiedScheme base, int n, int w) {
  validate_scheme(base);
  if (base.embedding == EmbeddingKind::None) {
    throw InvalidInput("parallel repetition needs a scheme that embeds the computation");
  }
  CompilerParams params;
  params.n = n;
  params.d = 0;
  params.s = n;
  params.w = w;
  params.validate();
  CompiledScheme out;
  out.base = std::move(base);
  out.params = params;
  out.kind = CompiledKind::Parallel;
  return out;
}

std::optional<std::uint64_t> majority_vote(const std::vector<std::uint64_t>& outputs,
                                           int bits) {
  if (outputs.empty()) return std::nullopt;
  std::uint64_t result = 0;
  for (int b = 0; b < bits; ++b) {
    std::size_t ones = 0;
    for (std::uint64_t out : outputs) ones += (out >> b) & 1ULL;
    if (2 * ones == outputs.size()) return std::nullopt;  // tie: conservative failure
    if (2 * ones > outputs.size()) result |= 1ULL << b;
  }
  return result;
}

namespace {

// Dense grid then golden-section refinement of a unimodal-enough objective.
ChiBound minimise_over_chi(const std::function<double(double)>& objective, double lo,
                           double hi) {
  if (hi < lo) hi = lo;
  const int grid = 10000;
  double best_chi = lo;
  double best = objective(lo);
  for (int i = 1; i <= grid; ++i) {
    double chi = lo + (hi - lo) * i / grid;
    double value = objective(chi);
    if (value < best) {
      best = value;
      best_chi = chi;
    }
  }
  double step = (hi - lo) / grid;
  double a = std::max(lo, best_chi - step);
  double b = std::min(hi, best_chi + step);
  const double ratio = 0.6180339887498949;
  double x1 = b - ratio * (b - a);
  double x2 = a + ratio * (b - a);
  double f1 = objective(x1);
  double f2 = objective(x2);
  while (b - a > 1e-9 * std::max(1.0, std::abs(best_chi))) {
    if (f1 < f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - ratio * (b - a);
      f1 = objective(x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + ratio * (b - a);
      f2 = objective(x2);
    }
  }
  double mid = (a + b) / 2;
  double fmid = objective(mid);
  if (fmid < best) {
    best = fmid;
    best_chi = mid;
  }
  return {best, best_chi};
}

}  // namespace

AmplifiedBounds bounds_amplified(const BoundInputs& in, const CompilerParams& params) {
  params.validate();
  double n = params.n;
  double s = params.s;
  double d = params.d;
  double w = params.w;
  double c = params.c;

  if (in.eps >= 1.0) throw Inadmissible("need eps < 1");
  double eps_floor = w / (s * (1.0 - in.eps));
  if (!(eps_floor < in.k_eps / n)) {
    throw Inadmissible("violated: w/(s(1-eps)) < k_eps/n");
  }
  if (!(in.k_eps <= in.k_nu)) throw Inadmissible("violated: k_eps <= k_nu");
  double nu_ceiling = (1.0 - 2.0 * c) / (2.0 - 2.0 * c);
  if (!(in.k_nu / n < nu_ceiling)) {
    throw Inadmissible("violated: k_nu/n < (1-2c)/(2-2c)");
  }
  if (!(in.p_delta < in.k_delta / n)) throw Inadmissible("violated: p_delta < k_delta/n");
  if (in.delta > 0.0 && !(in.k_delta / n < w / (s * in.delta))) {
    throw Inadmissible("violated: k_delta/n < w/(s delta)");
  }
  if (!(in.k_delta <= in.k_nu)) throw Inadmissible("violated: k_delta <= k_nu");

  AmplifiedBounds out;

  out.eps_prime = minimise_over_chi(
      [&](double chi) {
        double x = in.k_eps / n - chi;
        double gap = x * (1.0 - in.eps) - w / s;
        return std::exp(-2.0 * chi * chi * s) + std::exp(-2.0 * gap * gap / x * s);
      },
      0.0, in.k_eps / n - eps_floor);

  double delta_hi = in.delta > 0.0 ? w / (s * in.delta) - in.k_delta / n : 1.0;
  // Beyond chi = 1 the hypergeometric event is empty; the formula only gets
  // weaker, so the search interval is clipped there.
  delta_hi = std::min(delta_hi, 1.0);
  out.delta_prime = minimise_over_chi(
      [&](double chi) {
        double x = in.k_delta / n + chi;
        double gap = x * in.delta - w / s;
        return std::exp(-2.0 * chi * chi * s) + std::exp(-2.0 * gap * gap / x * s);
      },
      0.0, delta_hi);

  if (params.d > 0) {
    out.nu_prime = minimise_over_chi(
        [&](double chi) {
          double x = 1.0 - in.k_nu / n - chi;
          double gap = x * (1.0 - c) - 0.5;
          return std::exp(-2.0 * chi * chi * d) + std::exp(-2.0 * gap * gap / x * d);
        },
        0.0, nu_ceiling - in.k_nu / n);
    {
      double chi = out.nu_prime.chi;
      double x = 1.0 - in.k_nu / n - chi;
      double gap = 2.0 * x * (1.0 - c) - 0.5;
      out.nu_prime_proof_display =
          std::exp(-2.0 * chi * chi * d) + std::exp(-2.0 * gap * gap / x * d);
    }
  } else {
    out.nu_prime = {1.0, 0.0};
    out.nu_prime_proof_display = 1.0;
  }

  double noise_gap = in.p_delta - in.k_delta / n;
  out.p_delta_prime = std::exp(-2.0 * noise_gap * noise_gap * n);
  return out;
}

ParallelBounds bounds_parallel(const BoundInputs& in, int n, int w, double f) {
  if (n < 1 || w < 1 || w > n) throw InvalidInput("bad parallel parameters");
  ParallelBounds out;
  if (!(in.k_eps * (1.0 - in.eps) > w)) throw Inadmissible("violated: k_eps > w/(1-eps)");
  if (in.delta > 0.0 && !(in.k_delta * in.delta < w)) {
    throw Inadmissible("violated: k_delta < w/delta");
  }
  double survivors = (n - in.k_nu) * (1.0 - in.nu);
  if (!(survivors > f)) throw Inadmissible("violated: k_nu < (1-nu-f/n)/(1-nu) n");

  double eg = in.k_eps * (1.0 - in.eps) - w;
  out.eps = std::exp(-2.0 * eg * eg / in.k_eps);
  double dg = in.k_delta * in.delta - w;
  out.delta = in.k_delta > 0 ? std::exp(-2.0 * dg * dg / in.k_delta) : 0.0;
  double ng = survivors - f;
  out.nu = std::exp(-2.0 * ng * ng / (n - in.k_nu));
  return out;
}

MixtureParams mixture_parameters(const Rational& eps, const Rational& delta,
                                 const Rational& c, int d, int s) {
  int n = d + s;
  MixtureParams out;
  out.eps = 1 - (1 - eps) * Rational(s, n);
  out.delta = delta * Rational(s, n);
  out.nu = 1 - (1 - c) * Rational(d, n);
  return out;
}

namespace {

void check_tail_cap(long n) {
  if (n < 0 || n > kTailExactCap) throw CapExceeded("exact tail cap exceeded");
}

}  // namespace

Rational hypergeometric_tail_le(const Hypergeometric& h, long x) {
  check_tail_cap(h.population);
  if (h.successes < 0 || h.successes > h.population || h.draws < 0 ||
      h.draws > h.population) {
    throw InvalidInput("bad hypergeometric parameters");
  }
  BigInt denom = binomial(h.population, h.draws);
  BigInt acc = 0;
  long lo = std::max(0L, h.draws - (h.population - h.successes));
  long hi = std::min({x, h.draws, h.successes});
  for (long k = lo; k <= hi; ++k) {
    acc += binomial(h.successes, k) * binomial(h.population - h.successes, h.draws - k);
  }
  return Rational(acc, denom);
}

Rational hypergeometric_tail_ge(const Hypergeometric& h, long x) {
  if (x <= 0) return 1;
  return 1 - hypergeometric_tail_le(h, x - 1);
}

Rational binomial_tail_le(const BinomialDist& b, long x) {
  check_tail_cap(b.trials);
  if (b.p < 0 || b.p > 1) throw InvalidInput("binomial p outside [0,1]");
  if (x < 0) return 0;
  if (x >= b.trials) return 1;
  if (b.p == 0) return 1;  // all mass at zero
  if (b.p == 1) return 0;  // all mass at trials > x
  Rational q = 1 - b.p;
  Rational term = 1;  // p^k q^(m-k), built incrementally from k = 0
  for (long i = 0; i < b.trials; ++i) term *= q;
  Rational acc = 0;
  for (long k = 0; k <= x; ++k) {
    acc += Rational(binomial(b.trials, k)) * term;
    term = term / q * b.p;
  }
  return acc;
}

Rational binomial_tail_ge(const BinomialDist& b, long x) {
  if (x <= 0) return 1;
  return 1 - binomial_tail_le(b, x - 1);
}

}  // namespace trapkit
