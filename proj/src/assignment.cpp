// Copyright 2026 The pdq-eval Authors. All Rights Reserved.
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

#include "pdq/assignment.hpp"

#include <limits>
#include <stdexcept>

namespace pdq {
namespace {

// Minimum-cost assignment of n rows into m >= n columns. cost(i, j) is
// 0-indexed; the result maps rows to columns.
template <typename Cost>
std::vector<int> hungarian_min(std::size_t n, std::size_t m, Cost cost) {
  constexpr double kInf = std::numeric_limits<double>::infinity();
  // 1-indexed potentials and matching; column 0 is the virtual root.
  std::vector<double> u(n + 1, 0.0), v(m + 1, 0.0);
  std::vector<std::size_t> owner(m + 1, 0), way(m + 1, 0);
  std::vector<double> minv(m + 1);
  std::vector<char> used(m + 1);

  for (std::size_t i = 1; i <= n; ++i) {
    owner[0] = i;
    std::size_t j0 = 0;
    std::fill(minv.begin(), minv.end(), kInf);
    std::fill(used.begin(), used.end(), 0);
    do {
      used[j0] = 1;
      const std::size_t i0 = owner[j0];
      double delta = kInf;
      std::size_t j1 = 0;
      for (std::size_t j = 1; j <= m; ++j) {
        if (used[j]) continue;
        const double cur = cost(i0 - 1, j - 1) - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (std::size_t j = 0; j <= m; ++j) {
        if (used[j]) {
          u[owner[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (owner[j0] != 0);
    do {
      const std::size_t j1 = way[j0];
      owner[j0] = owner[j1];
      j0 = j1;
    } while (j0 != 0);
  }

  std::vector<int> row_to_col(n, -1);
  for (std::size_t j = 1; j <= m; ++j) {
    if (owner[j] != 0) row_to_col[owner[j] - 1] = static_cast<int>(j - 1);
  }
  return row_to_col;
}

}  // namespace

std::vector<int> max_weight_assignment(std::span<const double> weights, std::size_t rows,
                                       std::size_t cols) {
  if (weights.size() != rows * cols) {
    throw std::invalid_argument("assignment weight matrix has the wrong size");
  }
  if (rows == 0 || cols == 0) return std::vector<int>(rows, -1);

  if (rows <= cols) {
    return hungarian_min(rows, cols,
                         [&](std::size_t i, std::size_t j) { return -weights[i * cols + j]; });
  }
  const auto col_to_row = hungarian_min(
      cols, rows, [&](std::size_t j, std::size_t i) { return -weights[i * cols + j]; });
  std::vector<int> row_to_col(rows, -1);
  for (std::size_t j = 0; j < cols; ++j) {
    if (col_to_row[j] >= 0) row_to_col[static_cast<std::size_t>(col_to_row[j])] = static_cast<int>(j);
  }
  return row_to_col;
}

}  // namespace pdq
