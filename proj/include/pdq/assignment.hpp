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

#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace pdq {

/// Maximum-weight one-to-one assignment on a dense rows x cols weight matrix
/// (row-major). Every row is matched when rows <= cols, every column
/// otherwise; the result maps each row to its column or -1.
///
/// Shortest-augmenting-path Hungarian method, O(n^2 m). Deterministic for a
/// given matrix.
std::vector<int> max_weight_assignment(std::span<const double> weights, std::size_t rows,
                                       std::size_t cols);

}  // namespace pdq
