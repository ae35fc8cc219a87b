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

#include <span>
#include <string>
#include <vector>

#include "pdq/model.hpp"

namespace pdq {

/// How corner covariances are set: a constant, or a fraction of the box
/// width/height.
struct CovMode {
  enum class Kind { Fixed, Fraction };
  Kind kind = Kind::Fraction;
  double value = 0.30;

  static CovMode fixed(double v) { return {Kind::Fixed, v}; }
  static CovMode fraction(double f) { return {Kind::Fraction, f}; }

  /// "fixed:7.5" or "fraction:0.3".
  std::string to_string() const;
  /// Inverse of to_string. Throws InputError.
  static CovMode parse(const std::string& text);

  friend bool operator==(const CovMode&, const CovMode&) = default;
};

/// What a computed covariance entry means. Variance stores it as is; StdDev
/// squares it before storing.
enum class CovEntries { Variance, StdDev };

std::string to_string(CovEntries e);
CovEntries parse_cov_entries(const std::string& text);

struct PostProcessConfig {
  double score_threshold = 0.5;
  bool set_scores_to_one = true;
  bool recover_confusing = true;
  double recover_iou_threshold = 0.75;
  double recover_score_floor = 0.05;
  double shrink_factor = 0.1;
  CovMode cov_mode = CovMode::fraction(0.30);
  CovEntries cov_entries = CovEntries::Variance;

  /// Throws InputError naming the first out-of-range field.
  void validate() const;

  friend bool operator==(const PostProcessConfig&, const PostProcessConfig&) = default;
};

struct ScoreSplit {
  std::vector<Detection> kept;
  std::vector<Detection> discarded;
};

/// Keeps detections with score >= threshold; both halves keep input order.
ScoreSplit filter_by_score(std::span<const Detection> dets, double threshold);

/// One-hot at the argmax class.
Detection to_one_hot(const Detection& det);
std::vector<Detection> set_scores_to_one(std::span<const Detection> dets);

/// Re-adds pairs of discarded detections that overlap strongly but disagree
/// on class. A discarded detection is recovered when it has score >=
/// recover_score_floor and some other such detection with a different argmax
/// class overlaps it with IoU >= recover_iou_threshold. Output is `kept`
/// followed by the recovered detections in their original order.
std::vector<Detection> recover_confusing(std::span<const Detection> kept,
                                         std::span<const Detection> discarded,
                                         const PostProcessConfig& cfg);

/// Center-preserving shrink of every box by `factor` in width and height.
std::vector<Detection> shrink_boxes(std::span<const Detection> dets, double factor);

/// Sets both corner covariances from the mode; off-diagonals are zero.
std::vector<Detection> assign_covariance(std::span<const Detection> dets, const CovMode& mode,
                                         CovEntries entries);

/// threshold -> one-hot -> recovery -> shrink -> covariance. Recovered
/// detections are one-hot too, and fraction covariances use the shrunk box.
std::vector<Detection> run_pipeline(std::span<const Detection> dets, const PostProcessConfig& cfg);

}  // namespace pdq
