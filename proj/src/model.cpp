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

#include "pdq/model.hpp"

#include <cmath>
#include <numeric>
#include <sstream>

namespace pdq {
namespace {

constexpr double kDistSumSlack = 1e-6;

}  // namespace

bool BBox::valid() const {
  return std::isfinite(x1) && std::isfinite(y1) && std::isfinite(x2) && std::isfinite(y2) &&
         x1 <= x2 && y1 <= y2;
}

bool Cov2::valid() const {
  if (!(std::isfinite(xx) && std::isfinite(xy) && std::isfinite(yx) && std::isfinite(yy))) {
    return false;
  }
  if (xy != yx || xx < 0.0 || yy < 0.0) return false;
  // Determinant test with relative slack.
  const double det = xx * yy - xy * xy;
  return det >= -1e-12 * std::max(1.0, xx * yy);
}

LabelDist::LabelDist(std::vector<double> probs) : probs_(std::move(probs)) {
  double sum = 0.0;
  for (std::size_t c = 0; c < probs_.size(); ++c) {
    const double p = probs_[c];
    if (!(p >= 0.0 && p <= 1.0)) {
      std::ostringstream os;
      os << "label probability " << c << " = " << p << " is outside [0, 1]";
      throw InputError(os.str());
    }
    sum += p;
  }
  if (sum > 1.0 + kDistSumSlack) {
    std::ostringstream os;
    os << "label probabilities sum to " << sum << " (> 1)";
    throw InputError(os.str());
  }
}

LabelDist LabelDist::one_hot(std::size_t num_classes, std::size_t cls) {
  if (cls >= num_classes) throw InputError("one-hot class index out of range");
  std::vector<double> probs(num_classes, 0.0);
  probs[cls] = 1.0;
  return LabelDist(std::move(probs));
}

double LabelDist::score() const {
  return probs_.empty() ? 0.0 : probs_[label()];
}

std::size_t LabelDist::label() const {
  std::size_t best = 0;
  for (std::size_t c = 1; c < probs_.size(); ++c) {
    if (probs_[c] > probs_[best]) best = c;
  }
  return best;
}

std::vector<Pixel> mask_foreground_pixels(int width, int height,
                                          std::span<const std::uint32_t> runs) {
  return SegMask::from_rle(width, height, {runs.begin(), runs.end()}).foreground_pixels();
}

SegMask SegMask::from_rle(int width, int height, std::vector<std::uint32_t> runs) {
  if (width <= 0 || height <= 0) {
    throw DecodeError("mask size must be positive, got " + std::to_string(width) + "x" +
                      std::to_string(height));
  }
  const std::uint64_t total = static_cast<std::uint64_t>(width) * static_cast<std::uint64_t>(height);
  std::uint64_t covered = 0;
  for (std::size_t i = 0; i < runs.size(); ++i) {
    covered += runs[i];
    if (covered > total) {
      std::ostringstream os;
      os << "rle run " << i << " (length " << runs[i] << ") overruns the " << width << "x"
         << height << " mask";
      throw DecodeError(os.str());
    }
  }
  if (covered != total) {
    std::ostringstream os;
    os << "rle runs cover " << covered << " of " << total << " pixels (last run index ";
    if (runs.empty()) {
      os << "none";
    } else {
      os << runs.size() - 1;
    }
    os << ")";
    throw DecodeError(os.str());
  }
  SegMask m;
  m.width_ = width;
  m.height_ = height;
  m.runs_ = std::move(runs);
  return m;
}

SegMask SegMask::from_bitmap(int width, int height, std::span<const std::uint8_t> bitmap) {
  const std::size_t total = static_cast<std::size_t>(width) * static_cast<std::size_t>(height);
  if (width <= 0 || height <= 0 || bitmap.size() != total) {
    throw DecodeError("bitmap size does not match mask dimensions");
  }
  std::vector<std::uint32_t> runs;
  bool fg = false;
  std::uint32_t run = 0;
  for (std::uint8_t v : bitmap) {
    if ((v != 0) != fg) {
      runs.push_back(run);
      run = 0;
      fg = !fg;
    }
    ++run;
  }
  runs.push_back(run);
  return from_rle(width, height, std::move(runs));
}

SegMask SegMask::from_box(int width, int height, const BBox& box) {
  if (width <= 0 || height <= 0) throw DecodeError("mask size must be positive");
  const int xa = std::max(0, static_cast<int>(std::ceil(box.x1)));
  const int xb = std::min(width - 1, static_cast<int>(std::floor(box.x2)));
  const int ya = std::max(0, static_cast<int>(std::ceil(box.y1)));
  const int yb = std::min(height - 1, static_cast<int>(std::floor(box.y2)));
  const std::uint64_t total = static_cast<std::uint64_t>(width) * height;
  if (xa > xb || ya > yb) return from_rle(width, height, {static_cast<std::uint32_t>(total)});

  std::vector<std::uint32_t> runs;
  const auto row_len = static_cast<std::uint32_t>(xb - xa + 1);
  std::uint64_t bg = static_cast<std::uint64_t>(ya) * width + xa;
  for (int y = ya; y <= yb; ++y) {
    runs.push_back(static_cast<std::uint32_t>(bg));
    runs.push_back(row_len);
    bg = static_cast<std::uint64_t>(width) - row_len;
  }
  const std::uint64_t end = static_cast<std::uint64_t>(yb) * width + xb + 1;
  runs.push_back(static_cast<std::uint32_t>(total - end));
  // Merge full-width rows into a single foreground run.
  std::vector<std::uint32_t> merged;
  for (std::size_t i = 0; i < runs.size(); ++i) {
    if (i >= 2 && i % 2 == 0 && runs[i] == 0 && i + 1 < runs.size()) {
      merged.back() += runs[i + 1];
      ++i;
      continue;
    }
    merged.push_back(runs[i]);
  }
  return from_rle(width, height, std::move(merged));
}

std::size_t SegMask::foreground_count() const {
  std::size_t n = 0;
  for (std::size_t i = 1; i < runs_.size(); i += 2) n += runs_[i];
  return n;
}

std::vector<Pixel> SegMask::foreground_pixels() const {
  std::vector<Pixel> out;
  out.reserve(foreground_count());
  for_each_segment([&](int y, int xb, int xe) {
    for (int x = xb; x < xe; ++x) out.push_back({x, y});
  });
  return out;
}

std::vector<std::uint8_t> SegMask::to_bitmap() const {
  std::vector<std::uint8_t> out(static_cast<std::size_t>(width_) * height_, 0);
  for_each_segment([&](int y, int xb, int xe) {
    std::fill(out.begin() + static_cast<std::ptrdiff_t>(y) * width_ + xb,
              out.begin() + static_cast<std::ptrdiff_t>(y) * width_ + xe, std::uint8_t{1});
  });
  return out;
}

std::optional<BBox> SegMask::hull() const {
  bool any = false;
  int xmin = 0, ymin = 0, xmax = 0, ymax = 0;
  for_each_segment([&](int y, int xb, int xe) {
    if (!any) {
      xmin = xb;
      xmax = xe - 1;
      ymin = ymax = y;
      any = true;
      return;
    }
    xmin = std::min(xmin, xb);
    xmax = std::max(xmax, xe - 1);
    ymax = y;
  });
  if (!any) return std::nullopt;
  return BBox{static_cast<double>(xmin), static_cast<double>(ymin), static_cast<double>(xmax),
              static_cast<double>(ymax)};
}

double iou(const BBox& a, const BBox& b) {
  const double iw = std::min(a.x2, b.x2) - std::max(a.x1, b.x1);
  const double ih = std::min(a.y2, b.y2) - std::max(a.y1, b.y1);
  const double inter = (iw > 0.0 && ih > 0.0) ? iw * ih : 0.0;
  const double uni = a.area() + b.area() - inter;
  if (uni <= 0.0) return 0.0;
  return std::clamp(inter / uni, 0.0, 1.0);
}

namespace {

bool touches_image(const BBox& b, int width, int height) {
  return b.x2 >= 0.0 && b.y2 >= 0.0 && b.x1 <= static_cast<double>(width) &&
         b.y1 <= static_cast<double>(height);
}

[[noreturn]] void fail(const Frame& f, const std::string& what, std::size_t idx,
                       const std::string& msg) {
  std::ostringstream os;
  os << "frame '" << f.frame_id << "' " << what << " " << idx << ": " << msg;
  throw InputError(os.str());
}

}  // namespace

void validate_frame(const Frame& frame, std::size_t num_classes) {
  if (frame.width <= 0 || frame.height <= 0) {
    throw InputError("frame '" + frame.frame_id + "' has non-positive size");
  }
  for (std::size_t k = 0; k < frame.ground_truths.size(); ++k) {
    const auto& gt = frame.ground_truths[k];
    if (gt.frame_id != frame.frame_id) fail(frame, "object", k, "frame id mismatch");
    if (gt.class_id >= num_classes) {
      fail(frame, "object", k,
           "class_id " + std::to_string(gt.class_id) + " >= class count " +
               std::to_string(num_classes));
    }
    if (!gt.box.valid()) fail(frame, "object", k, "invalid box");
    if (gt.mask.width() != frame.width || gt.mask.height() != frame.height) {
      fail(frame, "object", k, "mask size does not match frame size");
    }
    const auto hull = gt.mask.hull();
    if (!hull) fail(frame, "object", k, "mask has no foreground pixels");
    if (hull->x1 < gt.box.x1 - 0.5 || hull->y1 < gt.box.y1 - 0.5 || hull->x2 > gt.box.x2 + 0.5 ||
        hull->y2 > gt.box.y2 + 0.5) {
      fail(frame, "object", k, "mask extends outside its box");
    }
    if (!touches_image(gt.box, frame.width, frame.height)) {
      fail(frame, "object", k, "box lies outside the image");
    }
  }
  for (std::size_t j = 0; j < frame.detections.size(); ++j) {
    const auto& d = frame.detections[j];
    if (d.frame_id != frame.frame_id) fail(frame, "detection", j, "frame id mismatch");
    if (d.label_dist.size() != num_classes) {
      fail(frame, "detection", j,
           "label_probs has " + std::to_string(d.label_dist.size()) + " entries, expected " +
               std::to_string(num_classes));
    }
    if (!d.pbox.box.valid()) fail(frame, "detection", j, "invalid box");
    if (!d.pbox.cov_tl.valid() || !d.pbox.cov_br.valid()) {
      fail(frame, "detection", j, "invalid covariance");
    }
    if (!touches_image(d.pbox.box, frame.width, frame.height)) {
      fail(frame, "detection", j, "box lies outside the image");
    }
  }
}

}  // namespace pdq
