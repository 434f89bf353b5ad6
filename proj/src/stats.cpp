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

#include "trapkit/stats.hpp"

#include <cmath>
#include <cstddef>
#include <stdexcept>

namespace trapkit {

Interval wilson_interval(std::uint64_t successes, std::uint64_t trials, double z) {
  if (trials == 0) return {0.0, 1.0, 0.0};
  double n = static_cast<double>(trials);
  double p = static_cast<double>(successes) / n;
  double z2 = z * z;
  double denom = 1.0 + z2 / n;
  double centre = (p + z2 / (2.0 * n)) / denom;
  double half = z * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n)) / denom;
  Interval out;
  out.point = p;
  out.low = std::max(0.0, centre - half);
  out.high = std::min(1.0, centre + half);
  return out;
}

namespace {

// Regularised lower incomplete gamma P(a, x), by series for x < a+1 and by
// continued fraction otherwise (Numerical Recipes style).
double gamma_p(double a, double x) {
  if (x < 0.0 || a <= 0.0) throw std::invalid_argument("gamma_p domain");
  if (x == 0.0) return 0.0;
  double gln = std::lgamma(a);
  if (x < a + 1.0) {
    double ap = a;
    double sum = 1.0 / a;
    double del = sum;
    for (int i = 0; i < 500; ++i) {
      ap += 1.0;
      del *= x / ap;
      sum += del;
      if (std::fabs(del) < std::fabs(sum) * 1e-15) break;
    }
    return sum * std::exp(-x + a * std::log(x) - gln);
  }
  double b = x + 1.0 - a;
  double c = 1e308;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i < 500; ++i) {
    double an = -i * (i - a);
    b += 2.0;
    d = an * d + b;
    if (std::fabs(d) < 1e-300) d = 1e-300;
    c = b + an / c;
    if (std::fabs(c) < 1e-300) c = 1e-300;
    d = 1.0 / d;
    double del = d * c;
    h *= del;
    if (std::fabs(del - 1.0) < 1e-15) break;
  }
  double q = std::exp(-x + a * std::log(x) - gln) * h;
  return 1.0 - q;
}

}  // namespace

double chi2_sf(double x, int dof) {
  if (x <= 0.0) return 1.0;
  return 1.0 - gamma_p(dof / 2.0, x / 2.0);
}

double chi2_gof_pvalue(const std::vector<std::uint64_t>& observed,
                       const std::vector<double>& expected, double min_expected) {
  if (observed.size() != expected.size() || observed.empty()) {
    throw std::invalid_argument("chi2_gof_pvalue: size mismatch");
  }
  // Pool low-expectation bins into one to keep the chi-square approximation
  // honest.
  std::vector<double> exp_bins;
  std::vector<double> obs_bins;
  double pooled_exp = 0.0;
  double pooled_obs = 0.0;
  for (std::size_t i = 0; i < observed.size(); ++i) {
    if (expected[i] < min_expected) {
      pooled_exp += expected[i];
      pooled_obs += static_cast<double>(observed[i]);
    } else {
      exp_bins.push_back(expected[i]);
      obs_bins.push_back(static_cast<double>(observed[i]));
    }
  }
  if (pooled_exp > 0.0) {
    exp_bins.push_back(pooled_exp);
    obs_bins.push_back(pooled_obs);
  }
  if (exp_bins.size() < 2) return 1.0;
  double stat = 0.0;
  for (std::size_t i = 0; i < exp_bins.size(); ++i) {
    double diff = obs_bins[i] - exp_bins[i];
    stat += diff * diff / exp_bins[i];
  }
  return chi2_sf(stat, static_cast<int>(exp_bins.size()) - 1);
}

}  // namespace trapkit
