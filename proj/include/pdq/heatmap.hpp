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

#include <vector>

#include "pdq/model.hpp"

namespace pdq {

inline constexpr double kDefaultSupportSigmas = 4.0;

/// Standard normal CDF.
double normal_cdf(double z);

/// Probability that lattice point (x, y) lies inside the box when each corner
/// coordinate is independently Gaussian:
///   Phi((x-x1)/sx1) * Phi((x2-x)/sx2) * Phi((y-y1)/sy1) * Phi((y2-y)/sy2)
/// with sigmas taken from the covariance diagonals. A zero sigma turns its
/// factor into a closed step (1 on the boundary).
/// Throws UnsupportedCovariance for non-diagonal covariances.
double pixel_prob(const PBox& pbox, double x, double y);

/// Inclusive integer rectangle [x0, x1] x [y0, y1]; empty when x0 > x1 or
/// y0 > y1.
struct PixelRect {
  int x0 = 0;
  int y0 = 0;
  int x1 = -1;
  int y1 = -1;

  bool empty() const { return x0 > x1 || y0 > y1; }
  int width() const { return empty() ? 0 : x1 - x0 + 1; }
  int height() const { return empty() ? 0 : y1 - y0 + 1; }
  bool contains(int x, int y) const { return x >= x0 && x <= x1 && y >= y0 && y <= y1; }

  friend bool operator==(const PixelRect&, const PixelRect&) = default;
};

/// Lattice points inside the box grown by k_sigma standard deviations per
/// side, clipped to the frame. pixel_prob is treated as 0 outside it.
PixelRect support_region(const PBox& pbox, int frame_width, int frame_height,
                         double k_sigma = kDefaultSupportSigmas);

/// Dense pixel probabilities over a support region.
class ProbMap {
 public:
  ProbMap() = default;
  ProbMap(PixelRect region, std::vector<double> values);

  const PixelRect& region() const { return region_; }
  int x0() const { return region_.x0; }
  int y0() const { return region_.y0; }
  int width() const { return region_.width(); }
  int height() const { return region_.height(); }
  const std::vector<double>& values() const { return values_; }

  /// Probability at an absolute pixel; 0 outside the region.
  double at(int x, int y) const {
    if (!region_.contains(x, y)) return 0.0;
    return values_[static_cast<std::size_t>(y - region_.y0) * width() + (x - region_.x0)];
  }

 private:
  PixelRect region_;
  std::vector<double> values_;
};

ProbMap render(const PBox& pbox, int frame_width, int frame_height,
               double k_sigma = kDefaultSupportSigmas);

}  // namespace pdq
