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

#pragma once

#include <optional>
#include <string>

#include "trapkit/analysis.hpp"
#include "trapkit/traps.hpp"

namespace trapkit {

/** Boolean relation between candidate tests and deviation classes. Error
 *  classes with identical detection columns are merged; class_sizes records
 *  how many enumerated deviations each column represents. */
struct TestErrorRelation {
  std::vector<std::string> test_labels;
  std::vector<PauliDeviation> errors;  // one representative per class
  std::vector<int> class_sizes;
  std::vector<std::vector<bool>> detects;  // [test][error class]
};

TestErrorRelation build_relation(const std::vector<TrappifiedCanvas>& tests,
                                 const DeviationSetSpec& set,
                                 int cap = kPredicateAnalysisCap);

struct OptimalDistribution {
  std::vector<Rational> weights;  // over tests, sums to at most 1
  Rational rate;                  // optimal worst-case detection rate
  std::vector<Rational> attack;   // optimal dual distribution over error classes
  bool non_unique = false;
  // Set when some error is detected by no test (rate 0).
  std::optional<std::size_t> undetectable_error;
};

/** Exact max-min LP over the relation, with the dual solution extracted
 *  from the final tableau as the optimal attack. */
OptimalDistribution solve_distribution(const TestErrorRelation& rel);

struct ColouringDistribution {
  FractionalColouring distribution;  // weights normalised to sum 1
  Rational rate;                     // exactly 1/chi_f(G)
};

/** Converts an optimal fractional colouring into a standard-trap
 *  distribution with guaranteed detection rate 1/chi_f(G). */
ColouringDistribution colouring_distribution(const OpenGraph& g,
                                             int cap = kGraphEnumerationCap);

}  // namespace trapkit
