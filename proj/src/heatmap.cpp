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

#include "pdq/heatmap.hpp"

#include <cmath>
#include <numbers>

namespace pdq {
namespace {

struct Sigmas {
  double left, top, right, bottom;
};

Sigmas corner_sigmas(const PBox& p) {
  if (!p.cov_tl.is_diagonal() || !p.cov_br.is_diagonal()) {
    throw UnsupportedCovariance("only diagonal corner covariances are supported");
  }
  if (!p.cov_tl.valid() || !p.cov_br.valid()) {
    throw InputError("corner covariance is not a valid covariance matrix");
  }
  return {std::sqrt(p.cov_tl.xx), std::sqrt(p.cov_tl.yy), std::sqrt(p.cov_br.xx),
          std::sqrt(p.cov_br.yy)};
}

// Probability that a Gaussian edge with mean `edge` lies at or below `pos`.
double edge_factor(double pos, double edge, double sigma) {
  if (sigma == 0.0) return pos >= edge ? 1.0 : 0.0;
  return normal_cdf((pos - edge) / sigma);
}

// Separable 1-D profile along one axis: inside the low edge and the high edge.
double axis_factor(double pos, double lo, double sigma_lo, double hi, double sigma_hi) {
  return edge_factor(pos, lo, sigma_lo) * edge_factor(hi, pos, sigma_hi);
}

}  // namespace

double normal_cdf(double z) {
  return 0.5 * std::erfc(-z / std::numbers::sqrt2);
}

double pixel_prob(const PBox& pbox, double x, double y) {
  const Sigmas s = corner_sigmas(pbox);
  const BBox& b = pbox.box;
  return axis_factor(x, b.x1, s.left, b.x2, s.right) * axis_factor(y, b.y1, s.top, b.y2, s.bottom);
}

PixelRect support_region(const PBox& pbox, int frame_width, int frame_height, double k_sigma) {
  const Sigmas s = corner_sigmas(pbox);
  const BBox& b = pbox.box;
  const double lo_x = std::ceil(b.x1 - k_sigma * s.left);
  const double lo_y = std::ceil(b.y1 - k_sigma * s.top);
  const double hi_x = std::floor(b.x2 + k_sigma * s.right);
  const double hi_y = std::floor(b.y2 + k_sigma * s.bottom);
  PixelRect r;
  r.x0 = static_cast<int>(std::max(lo_x, 0.0));
  r.y0 = static_cast<int>(std::max(lo_y, 0.0));
  r.x1 = static_cast<int>(std::min(hi_x, static_cast<double>(frame_width - 1)));
  r.y1 = static_cast<int>(std::min(hi_y, static_cast<double>(frame_height - 1)));
  if (r.empty()) return PixelRect{};
  return r;
}

ProbMap::ProbMap(PixelRect region, std::vector<double> values)
    : region_(region), values_(std::move(values)) {
  if (values_.size() != static_cast<std::size_t>(region_.width()) * region_.height()) {
    throw InputError("probability map size does not match its region");
  }
}

ProbMap render(const PBox& pbox, int frame_width, int frame_height, double k_sigma) {
  const PixelRect r = support_region(pbox, frame_width, frame_height, k_sigma);
  if (r.empty()) return ProbMap{};
  const Sigmas s = corner_sigmas(pbox);
  const BBox& b = pbox.box;

  std::vector<double> col(static_cast<std::size_t>(r.width()));
  for (int x = r.x0; x <= r.x1; ++x) {
    col[static_cast<std::size_t>(x - r.x0)] = axis_factor(x, b.x1, s.left, b.x2, s.right);
  }
  std::vector<double> values(static_cast<std::size_t>(r.width()) * r.height());
  auto out = values.begin();
  for (int y = r.y0; y <= r.y1; ++y) {
    const double fy = axis_factor(y, b.y1, s.top, b.y2, s.bottom);
    for (double fx : col) *out++ = fx * fy;
  }
  return ProbMap(r, std::move(values));
}

}  // namespace pdq
