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

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "pdq/metric.hpp"
#include "pdq/model.hpp"

namespace pdq {

struct FrameInfo {
  std::string frame_id;
  int width = 0;
  int height = 0;
};

/// Class list and frame index of a ground-truth file. An empty class list
/// means the file carried no header and the class count is taken from the
/// detections.
class DatasetManifest {
 public:
  std::vector<std::string> class_names;

  const std::vector<FrameInfo>& frames() const { return frames_; }
  /// Throws InputError on a duplicate id.
  void add_frame(FrameInfo info);
  std::optional<std::size_t> find(const std::string& frame_id) const;

 private:
  std::vector<FrameInfo> frames_;
  std::unordered_map<std::string, std::size_t> index_;
};

/// Ground truth in file order; frames carry no detections.
struct GroundTruthSet {
  DatasetManifest manifest;
  std::vector<Frame> frames;
};

struct FrameDetections {
  std::string frame_id;
  std::vector<Detection> detections;

  friend bool operator==(const FrameDetections&, const FrameDetections&) = default;
};

using DetectionSet = std::vector<FrameDetections>;

enum class ReportFormat { Json, Csv };

/// Line-delimited JSON. An optional first record {"class_names": [...]} is
/// the header; every other record is one frame:
///   {"frame_id", "width", "height",
///    "objects": [{"class_id", "bbox"?, "mask": {"size": [w, h],
///                 "rle": [...] | "polygons": [[x0, y0, x1, y1, ...], ...]}}]}
/// Errors carry "<source>:<line>: <json-pointer>:" prefixes.
GroundTruthSet parse_ground_truth(std::istream& in, const std::string& source);
GroundTruthSet load_ground_truth(const std::filesystem::path& path);

/// Records {"frame_id", "detections": [{"label_probs", "bbox", "covars"?}]}.
/// With a manifest, frame ids must be known and label_probs must match its
/// class count (when it has one).
DetectionSet parse_detections(std::istream& in, const std::string& source,
                              const DatasetManifest* manifest);
DetectionSet load_detections(const std::filesystem::path& path, const DatasetManifest& manifest);
DetectionSet load_detections(const std::filesystem::path& path);

void write_ground_truth(std::ostream& out, const GroundTruthSet& gt);
void write_ground_truth(const std::filesystem::path& path, const GroundTruthSet& gt);
void write_detections(std::ostream& out, const DetectionSet& dets);
void write_detections(const std::filesystem::path& path, const DetectionSet& dets);

/// Class count for a dataset: the header's, else the detections' label
/// length, else one past the largest ground-truth class id.
std::size_t infer_num_classes(const GroundTruthSet& gt, const DetectionSet& dets);

/// Attaches detections to their ground-truth frames (frames without a
/// detection record get none) and validates every frame.
std::vector<Frame> join_frames(const GroundTruthSet& gt, const DetectionSet& dets);

/// Polygon rasterisation at lattice points with the even-odd rule. Each
/// polygon is a flat [x0, y0, x1, y1, ...] list.
SegMask rasterize_polygons(int width, int height, const std::vector<std::vector<double>>& polygons);

/// Floats carry 6 significant digits. CSV columns: pdq, apdq, avg_spatial,
/// avg_label, tp, fp, fn.
std::string format_report(const PdqReport& report, ReportFormat format);
void write_report(const PdqReport& report, const std::filesystem::path& path, ReportFormat format);
/// Reads back what format_report wrote (per-frame rows only for JSON).
PdqReport parse_report(std::string_view text, ReportFormat format);
ReportFormat parse_report_format(const std::string& name);

/// Rounds to 6 significant digits, the precision used in reports.
double round_sig6(double v);

std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, std::string_view text);

}  // namespace pdq
