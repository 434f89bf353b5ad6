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

#include <cstdint>
#include <vector>

namespace trapkit {

struct Interval {
  double low = 0.0;
  double high = 1.0;
  double point = 0.0;
};

/** Wilson score interval for a binomial proportion (default 95%). */
Interval wilson_interval(std::uint64_t successes, std::uint64_t trials,
                         double z = 1.959963984540054);

/** Survival function of the chi-square distribution, P[X >= x] with k
 *  degrees of freedom. */
double chi2_sf(double x, int dof);

/** Pearson goodness-of-fit p-value of observed counts against expected
 *  counts. Bins with expected count below `min_expected` are pooled. */
double chi2_gof_pvalue(const std::vector<std::uint64_t>& observed,
                       const std::vector<double>& expected,
                       double min_expected = 5.0);

}  // namespace trapkit
