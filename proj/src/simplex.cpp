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

#include "trapkit/simplex.hpp"

#include <cstddef>

#include "trapkit/errors.hpp"

namespace trapkit {

LpSolution simplex_max(const std::vector<std::vector<Rational>>& a,
                       const std::vector<Rational>& b,
                       const std::vector<Rational>& c) {
  const std::size_t m = a.size();
  const std::size_t n = c.size();
  for (const auto& row : a) {
    if (row.size() != n) throw InvalidInput("simplex: ragged constraint matrix");
  }
  if (b.size() != m) throw InvalidInput("simplex: rhs size mismatch");
  for (const auto& bi : b) {
    if (bi < 0) throw InvalidInput("simplex: negative rhs not supported");
  }

  // Tableau layout: columns [0, n) structural, [n, n+m) slack, last column rhs.
  // Objective row holds z_j - c_j; pivoting keeps it consistent.
  const std::size_t cols = n + m + 1;
  std::vector<std::vector<Rational>> t(m + 1, std::vector<Rational>(cols, Rational(0)));
  std::vector<std::size_t> basis(m);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) t[i][j] = a[i][j];
    t[i][n + i] = 1;
    t[i][cols - 1] = b[i];
    basis[i] = n + i;
  }
  for (std::size_t j = 0; j < n; ++j) t[m][j] = -c[j];

  for (;;) {
    // Bland: entering = lowest-index column with negative reduced cost.
    std::size_t enter = cols - 1;
    for (std::size_t j = 0; j + 1 < cols; ++j) {
      if (t[m][j] < 0) {
        enter = j;
        break;
      }
    }
    if (enter == cols - 1) break;  // optimal

    // Ratio test; Bland tie-break on lowest basis index.
    std::size_t leave = m;
    Rational best_ratio;
    for (std::size_t i = 0; i < m; ++i) {
      if (t[i][enter] > 0) {
        Rational ratio = t[i][cols - 1] / t[i][enter];
        if (leave == m || ratio < best_ratio ||
            (ratio == best_ratio && basis[i] < basis[leave])) {
          leave = i;
          best_ratio = ratio;
        }
      }
    }
    if (leave == m) throw InvalidInput("simplex: unbounded objective");

    // Pivot.
    Rational pivot = t[leave][enter];
    for (auto& v : t[leave]) v /= pivot;
    for (std::size_t i = 0; i <= m; ++i) {
      if (i == leave) continue;
      if (t[i][enter] == 0) continue;
      Rational factor = t[i][enter];
      for (std::size_t j = 0; j < cols; ++j) t[i][j] -= factor * t[leave][j];
    }
    basis[leave] = enter;
  }

  LpSolution out;
  out.value = t[m][cols - 1];
  out.x.assign(n, Rational(0));
  for (std::size_t i = 0; i < m; ++i) {
    if (basis[i] < n) out.x[basis[i]] = t[i][cols - 1];
  }
  out.dual.assign(m, Rational(0));
  for (std::size_t i = 0; i < m; ++i) out.dual[i] = t[m][n + i];
  std::vector<bool> basic(cols - 1, false);
  for (std::size_t i = 0; i < m; ++i) basic[basis[i]] = true;
  for (std::size_t j = 0; j + 1 < cols; ++j) {
    if (!basic[j] && t[m][j] == 0) {
      out.degenerate_optimum = true;
      break;
    }
  }
  return out;
}

}  // namespace trapkit
