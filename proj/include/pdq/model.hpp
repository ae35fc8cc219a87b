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

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "pdq/error.hpp"

namespace pdq {

/// Axis-aligned box in continuous pixel coordinates (origin top-left, y down).
/// Integer pixel (x, y) is the lattice point at those coordinates.
struct BBox {
  double x1 = 0.0;
  double y1 = 0.0;
  double x2 = 0.0;
  double y2 = 0.0;

  double width() const { return x2 - x1; }
  double height() const { return y2 - y1; }
  double area() const { return width() * height(); }
  double center_x() const { return 0.5 * (x1 + x2); }
  double center_y() const { return 0.5 * (y1 + y2); }

  /// Closed-box containment of a lattice point.
  bool contains(double x, double y) const {
    return x >= x1 && x <= x2 && y >= y1 && y <= y2;
  }

  bool valid() const;

  friend bool operator==(const BBox&, const BBox&) = default;
};

/// 2x2 corner covariance in pixel^2, row-major.
struct Cov2 {
  double xx = 0.0;
  double xy = 0.0;
  double yx = 0.0;
  double yy = 0.0;

  static Cov2 diag(double vx, double vy) { return Cov2{vx, 0.0, 0.0, vy}; }

  bool is_diagonal() const { return xy == 0.0 && yx == 0.0; }
  /// Symmetric, non-negative diagonal, positive semi-definite.
  bool valid() const;

  friend bool operator==(const Cov2&, const Cov2&) = default;
};

/// Probabilistic bounding box: a box whose two corners carry Gaussian
/// localisation uncertainty.
struct PBox {
  BBox box;
  Cov2 cov_tl;
  Cov2 cov_br;

  static PBox crisp(const BBox& b) { return PBox{b, Cov2{}, Cov2{}}; }

  friend bool operator==(const PBox&, const PBox&) = default;
};

/// Class probability distribution. Entries lie in [0, 1] and sum to at most
/// one; the remainder is implicit "no object" mass and is never renormalised.
class LabelDist {
 public:
  LabelDist() = default;
  /// Throws InputError when any entry is outside [0, 1] or the sum exceeds
  /// 1 + 1e-6.
  explicit LabelDist(std::vector<double> probs);

  static LabelDist one_hot(std::size_t num_classes, std::size_t cls);

  std::span<const double> probs() const { return probs_; }
  std::size_t size() const { return probs_.size(); }
  double operator[](std::size_t c) const { return probs_[c]; }

  /// Highest entry (0 for an empty distribution).
  double score() const;
  /// Index of the highest entry, lowest index on ties.
  std::size_t label() const;

  friend bool operator==(const LabelDist&, const LabelDist&) = default;

 private:
  std::vector<double> probs_;
};

struct Detection {
  LabelDist label_dist;
  PBox pbox;
  std::string frame_id;

  double score() const { return label_dist.score(); }
  std::size_t label() const { return label_dist.label(); }

  friend bool operator==(const Detection&, const Detection&) = default;
};

struct Pixel {
  int x = 0;
  int y = 0;

  friend bool operator==(const Pixel&, const Pixel&) = default;
};

/// Binary mask stored as row-major run lengths, alternating background and
/// foreground and always starting with a (possibly empty) background run.
class SegMask {
 public:
  SegMask() = default;

  /// Throws DecodeError naming the offending run when the runs do not sum to
  /// width * height.
  static SegMask from_rle(int width, int height, std::vector<std::uint32_t> runs);
  /// bitmap holds width * height row-major bytes, non-zero = foreground.
  static SegMask from_bitmap(int width, int height, std::span<const std::uint8_t> bitmap);
  /// Every lattice point inside the closed box, clipped to the frame.
  static SegMask from_box(int width, int height, const BBox& box);

  int width() const { return width_; }
  int height() const { return height_; }
  std::span<const std::uint32_t> runs() const { return runs_; }

  std::size_t foreground_count() const;
  std::vector<Pixel> foreground_pixels() const;
  std::vector<std::uint8_t> to_bitmap() const;
  /// Tight hull of the foreground lattice points; nullopt for an empty mask.
  std::optional<BBox> hull() const;

  /// Calls fn(y, x_begin, x_end) for each maximal horizontal foreground
  /// segment [x_begin, x_end), in row-major order.
  template <typename Fn>
  void for_each_segment(Fn&& fn) const {
    std::uint64_t pos = 0;
    const auto w = static_cast<std::uint64_t>(width_);
    for (std::size_t i = 0; i < runs_.size(); ++i) {
      std::uint64_t len = runs_[i];
      if (i % 2 == 1) {
        std::uint64_t p = pos;
        std::uint64_t remaining = len;
        while (remaining > 0) {
          const std::uint64_t y = p / w;
          const std::uint64_t x = p % w;
          const std::uint64_t take = std::min(remaining, w - x);
          fn(static_cast<int>(y), static_cast<int>(x), static_cast<int>(x + take));
          p += take;
          remaining -= take;
        }
      }
      pos += len;
    }
  }

  friend bool operator==(const SegMask&, const SegMask&) = default;

 private:
  int width_ = 0;
  int height_ = 0;
  std::vector<std::uint32_t> runs_;
};

/// Decodes runs into foreground pixels in row-major order. Throws DecodeError
/// on malformed runs.
std::vector<Pixel> mask_foreground_pixels(int width, int height,
                                          std::span<const std::uint32_t> runs);

struct GroundTruthObject {
  std::size_t class_id = 0;
  BBox box;
  SegMask mask;
  std::string frame_id;
};

struct Frame {
  std::string frame_id;
  int width = 0;
  int height = 0;
  std::vector<GroundTruthObject> ground_truths;
  std::vector<Detection> detections;
};

/// Intersection over union; 0 when the union has zero area.
double iou(const BBox& a, const BBox& b);

/// Enforces the cross-object invariants of a frame: matching frame ids,
/// class ids below num_classes, label distributions of length num_classes,
/// masks inside their boxes and boxes touching the image. Throws InputError
/// with a message naming the frame and object.
void validate_frame(const Frame& frame, std::size_t num_classes);

}  // namespace pdq
