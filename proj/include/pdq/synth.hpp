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

#include <cstdint>
#include <string>

#include "pdq/io.hpp"

namespace pdq {

/// SplitMix64. Bit-exact on every platform; split() derives an independent
/// per-frame stream.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next();
  /// Uniform in [0, 1) with 53 random bits.
  double uniform();
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  /// Uniform integer in [lo, hi].
  std::int64_t uniform_int(std::int64_t lo, std::int64_t hi);
  bool bernoulli(double p) { return uniform() < p; }
  /// Box-Muller; consumes two uniforms per call.
  double normal(double mean, double stddev);

  SplitMix64 split(std::uint64_t stream) const;

 private:
  std::uint64_t state_;
};

/// Detector error model for synthetic detections. All zeros yields a perfect
/// detector: one-hot correct labels and crisp boxes equal to the objects.
struct NoiseProfile {
  /// Corner jitter: sigma = loc_sigma + loc_sigma_rel * box side, per coordinate.
  double loc_sigma = 0.0;
  double loc_sigma_rel = 0.0;
  /// Systematic overshoot: detection boxes are grown about their center by
  /// this fraction of width and height before jitter.
  double scale_bias = 0.0;
  /// Probability the top class is wrong.
  double label_confusion = 0.0;
  /// True-detection score is 1 - U[0, score_noise].
  double score_noise = 0.0;
  /// Expected low-score (U[0.05, 0.45]) false detections per object.
  double spurious_rate = 0.0;
  double miss_rate = 0.0;
  /// Probability an object is reported as two overlapping low-score
  /// detections that disagree on class, one of them correct.
  double ambiguous_rate = 0.0;

  /// Either a preset name (none, localization, spurious, confusing, mixed),
  /// a comma-separated key=value list starting from all zeros, or a preset
  /// followed by overrides ("localization,miss_rate=0.1").
  static NoiseProfile parse(const std::string& text);
  void validate() const;
};

enum class MaskShape { Rectangle, Ellipse };

/// "rect" or "ellipse".
MaskShape parse_mask_shape(const std::string& text);

struct SynthOptions {
  std::size_t frames = 1;
  std::size_t max_objects = 5;
  int width = 640;
  int height = 480;
  std::size_t num_classes = 30;
  int min_box = 16;
  int max_box = 160;
  std::uint64_t seed = 0;
  /// Ellipse masks are inscribed in their rectangle; the object box is the
  /// mask's tight hull.
  MaskShape mask_shape = MaskShape::Rectangle;
  NoiseProfile noise;
};

struct SynthData {
  GroundTruthSet ground_truth;
  DetectionSet detections;
};

/// Frames hold 1..max_objects objects drawn as random rectangles.
SynthData synthesize(const SynthOptions& opts);

}  // namespace pdq
