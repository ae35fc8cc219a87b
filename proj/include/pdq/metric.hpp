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
#include <string>
#include <vector>

#include "pdq/heatmap.hpp"
#include "pdq/model.hpp"

namespace pdq {

/// Probabilities are floored at this value before taking logarithms.
inline constexpr double kLogFloor = 1e-14;

struct SpatialQuality {
  double quality = 0.0;
  double fg_loss = 0.0;
  double bg_loss = 0.0;
};

struct PairQuality {
  double spatial = 0.0;
  double label = 0.0;
  double ppdq = 0.0;
  double fg_loss = 0.0;
  double bg_loss = 0.0;
};

struct Assignment {
  std::size_t detection = 0;
  std::size_t ground_truth = 0;
  PairQuality quality;
};

struct FrameEvaluation {
  std::string frame_id;
  /// Sorted by detection index. Every entry has ppdq > 0.
  std::vector<Assignment> assignments;
  std::size_t tp = 0;
  std::size_t fp = 0;
  std::size_t fn = 0;
};

struct FrameSummary {
  std::string frame_id;
  std::size_t tp = 0;
  std::size_t fp = 0;
  std::size_t fn = 0;
  double ppdq_sum = 0.0;

  friend bool operator==(const FrameSummary&, const FrameSummary&) = default;
};

struct PdqReport {
  double pdq = 0.0;
  double apdq = 0.0;
  double avg_spatial = 0.0;
  double avg_label = 0.0;
  std::size_t n_tp = 0;
  std::size_t n_fp = 0;
  std::size_t n_fn = 0;
  std::vector<FrameSummary> per_frame;

  friend bool operator==(const PdqReport&, const PdqReport&) = default;
};

struct EvalOptions {
  double k_sigma = kDefaultSupportSigmas;
  /// Frame-level workers; results do not depend on this value.
  unsigned threads = 1;
};

/// Probability the detection assigns to the ground-truth class. Throws
/// InputError when class_id is out of range.
double label_quality(const Detection& det, std::size_t class_id);

/// Foreground/background log-loss of a probability map against an object:
///   fg_loss = -(1/|S|) sum_{x in S} ln p(x)
///   bg_loss = -(1/|S|) sum_{x in B} ln (1 - p(x))
///   Q_S     = exp(-(fg_loss + bg_loss))
/// S is the mask foreground, B the map's support pixels outside the object's
/// box. Log arguments are floored at kLogFloor. A map that gives no
/// foreground pixel any probability has Q_S = 0. Throws InputError for an
/// empty mask.
SpatialQuality spatial_quality(const ProbMap& map, const GroundTruthObject& gt);

/// Geometric mean of spatial and label quality.
double pairwise_pdq(double spatial, double label);

/// All quality terms for one pair, with `map` rendered from `det`.
PairQuality pair_quality(const ProbMap& map, const Detection& det, const GroundTruthObject& gt);

/// Row-major detections x ground-truths matrix of pair qualities. Pairs with
/// zero label quality skip the spatial computation and carry zeros.
std::vector<PairQuality> pair_matrix(const Frame& frame, double k_sigma = kDefaultSupportSigmas);

/// Optimal assignment on a precomputed pair matrix; zero-ppdq pairs are
/// demoted to a false positive plus a false negative.
FrameEvaluation match_pairs(std::string frame_id, std::span<const PairQuality> matrix,
                            std::size_t num_detections, std::size_t num_ground_truths);

FrameEvaluation match_frame(const Frame& frame, const EvalOptions& opts = {});

/// Dataset totals: PDQ = n_tp * aPDQ / (n_tp + n_fp + n_fn), 0 for an empty
/// denominator. Averages are over true positives in frame order.
PdqReport aggregate(std::span<const FrameEvaluation> evals);

PdqReport evaluate(std::span<const Frame> frames, const EvalOptions& opts = {});

/// Pairwise (cascade) summation; the result depends only on element order.
double pairwise_sum(std::span<const double> values);

}  // namespace pdq
