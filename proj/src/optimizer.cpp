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

#include "trapkit/optimizer.hpp"

#include <bit>
#include <map>

#include "trapkit/errors.hpp"
#include "trapkit/simplex.hpp"

namespace trapkit {

namespace {

std::string canvas_label(const TrappifiedCanvas& canvas) {
  std::string kind;
  switch (canvas.kind) {
    case CanvasKind::Standard: kind = "standard"; break;
    case CanvasKind::General: kind = "general"; break;
    case CanvasKind::Custom: kind = "custom"; break;
  }
  std::string vertices;
  for (int v = 0; v < 64; ++v) {
    if ((canvas.h_mask >> v) & 1ULL) {
      if (!vertices.empty()) vertices += ",";
      vertices += std::to_string(v);
    }
  }
  return kind + ":{" + vertices + "}";
}

}  // namespace

TestErrorRelation build_relation(const std::vector<TrappifiedCanvas>& tests,
                                 const DeviationSetSpec& set, int cap) {
  if (tests.empty()) throw InvalidInput("no candidate tests");
  int n = tests.front().graph.size();
  auto devs = deviation_representatives(set, n, cap);
  if (devs.empty()) throw InvalidInput("empty error set");

  TestErrorRelation rel;
  for (const auto& canvas : tests) rel.test_labels.push_back(canvas_label(canvas));

  // Columns keyed by their full detection pattern; identical columns are one
  // error class.
  std::map<std::vector<bool>, std::size_t> classes;
  for (const auto& dev : devs) {
    std::vector<bool> column(tests.size());
    for (std::size_t t = 0; t < tests.size(); ++t) {
      column[t] = reject_probability(tests[t], dev) == 1;
    }
    auto [it, fresh] = classes.emplace(std::move(column), rel.errors.size());
    if (fresh) {
      rel.errors.push_back(dev);
      rel.class_sizes.push_back(1);
    } else {
      ++rel.class_sizes[it->second];
    }
  }
  rel.detects.assign(tests.size(), std::vector<bool>(rel.errors.size(), false));
  for (const auto& [column, index] : classes) {
    for (std::size_t t = 0; t < tests.size(); ++t) rel.detects[t][index] = column[t];
  }
  return rel;
}

OptimalDistribution solve_distribution(const TestErrorRelation& rel) {
  const std::size_t num_tests = rel.test_labels.size();
  const std::size_t num_errors = rel.errors.size();
  OptimalDistribution out;

  for (std::size_t e = 0; e < num_errors; ++e) {
    bool detected = false;
    for (std::size_t t = 0; t < num_tests && !detected; ++t) detected = rel.detects[t][e];
    if (!detected) {
      out.rate = 0;
      out.weights.assign(num_tests, Rational(1, BigInt(num_tests)));
      out.attack.assign(num_errors, Rational(0));
      out.attack[e] = 1;
      out.undetectable_error = e;
      return out;
    }
  }

  // max eps  s.t.  sum_t p_t <= 1;  eps - sum_{t detects e} p_t <= 0.
  std::vector<std::vector<Rational>> a;
  std::vector<Rational> b;
  a.emplace_back(num_tests + 1, Rational(0));
  for (std::size_t t = 0; t < num_tests; ++t) a[0][t] = 1;
  b.push_back(1);
  for (std::size_t e = 0; e < num_errors; ++e) {
    std::vector<Rational> row(num_tests + 1, Rational(0));
    for (std::size_t t = 0; t < num_tests; ++t) {
      if (rel.detects[t][e]) row[t] = -1;
    }
    row[num_tests] = 1;
    a.push_back(std::move(row));
    b.push_back(0);
  }
  std::vector<Rational> c(num_tests + 1, Rational(0));
  c[num_tests] = 1;

  LpSolution lp = simplex_max(a, b, c);
  out.rate = lp.value;
  out.weights.assign(lp.x.begin(), lp.x.begin() + num_tests);
  out.non_unique = lp.degenerate_optimum;

  // Dual prices of the per-error constraints form the optimal attack.
  Rational total = 0;
  out.attack.assign(num_errors, Rational(0));
  for (std::size_t e = 0; e < num_errors; ++e) {
    out.attack[e] = lp.dual[e + 1];
    total += out.attack[e];
  }
  if (total > 0) {
    for (auto& q : out.attack) q /= total;
  }
  return out;
}

ColouringDistribution colouring_distribution(const OpenGraph& g, int cap) {
  auto frac = fractional_chromatic_number(g, cap);
  ColouringDistribution out;
  out.rate = Rational(1) / frac.value;
  out.distribution = frac.colouring;
  for (auto& w : out.distribution.weights) w /= frac.value;
  return out;
}

}  // namespace trapkit
