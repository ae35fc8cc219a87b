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
#include <string>
#include <string_view>
#include <vector>

#include "pdq/io.hpp"
#include "pdq/metric.hpp"
#include "pdq/postprocess.hpp"

namespace pdq {

/// JSON object whose keys mirror PostProcessConfig field names; missing keys
/// keep their defaults, unknown keys are rejected. cov_mode is written as
/// "fixed:<v>" or "fraction:<f>".
PostProcessConfig parse_postprocess_config(std::string_view json_text);
std::string format_postprocess_config(const PostProcessConfig& cfg);

/// Runs the pipeline on every frame's detections.
DetectionSet apply_pipeline(const DetectionSet& raw, const PostProcessConfig& cfg);

/// Grid over the ablation axes. Axes left out of the spec file hold the base
/// config's value.
struct SweepSpec {
  std::vector<double> score_threshold;
  std::vector<CovMode> cov_mode;
  std::vector<double> shrink_factor;
  std::vector<bool> set_scores_to_one;
  std::vector<bool> recover_confusing;
  PostProcessConfig base;
  std::size_t max_combinations = 10000;

  /// Single-point grid at `base`.
  static SweepSpec single(const PostProcessConfig& base);

  std::size_t combinations() const;
  /// Throws InputError for empty axes or a grid above max_combinations.
  void validate() const;
  /// Configurations in grid order (score_threshold varies slowest,
  /// recover_confusing fastest).
  std::vector<PostProcessConfig> grid() const;
};

/// {"score_threshold": [..], "cov_mode": ["fixed:7.5", ..], "shrink_factor": [..],
///  "set_scores_to_one": [..], "recover_confusing": [..], "base": {config},
///  "max_combinations": N}
SweepSpec parse_sweep_spec(std::string_view json_text);

struct SweepRow {
  std::size_t grid_index = 0;
  PostProcessConfig config;
  PdqReport report;
  bool best = false;
};

/// Evaluates every grid point from the raw detections; rows come back sorted
/// by descending PDQ (grid order on ties) with the first flagged best.
std::vector<SweepRow> run_sweep(const GroundTruthSet& gt, const DetectionSet& raw,
                                const SweepSpec& spec, unsigned threads,
                                double k_sigma = kDefaultSupportSigmas);

std::string format_sweep_csv(const std::vector<SweepRow>& rows);

}  // namespace pdq
