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

#include "pdq/metric.hpp"

#include <cmath>
#include <sstream>

#include "pdq/assignment.hpp"
#include "pdq/parallel.hpp"

namespace pdq {
namespace {

const double kLogOfFloor = std::log(kLogFloor);

// Per-pixel logarithms of a rendered map, computed once per detection and
// reused against every ground truth in the frame.
struct LogMap {
  PixelRect region;
  std::vector<double> prob;
  std::vector<double> log_fg;  // ln max(p, floor)
  std::vector<double> log_bg;  // ln max(1 - p, floor)

  explicit LogMap(const ProbMap& map) : region(map.region()), prob(map.values()) {
    log_fg.resize(prob.size());
    log_bg.resize(prob.size());
    for (std::size_t i = 0; i < prob.size(); ++i) {
      log_fg[i] = std::log(std::max(prob[i], kLogFloor));
      log_bg[i] = std::log(std::max(1.0 - prob[i], kLogFloor));
    }
  }
};

SpatialQuality spatial_from_logs(const LogMap& lm, const GroundTruthObject& gt) {
  const std::size_t n_fg = gt.mask.foreground_count();
  if (n_fg == 0) throw InputError("ground-truth object in frame '" + gt.frame_id + "' has an empty mask");

  const PixelRect& r = lm.region;
  const auto stride = static_cast<std::size_t>(r.width());
  double fg_sum = 0.0;
  std::size_t outside = 0;
  bool overlap = false;
  gt.mask.for_each_segment([&](int y, int xb, int xe) {
    if (r.empty() || y < r.y0 || y > r.y1) {
      outside += static_cast<std::size_t>(xe - xb);
      return;
    }
    const int lo = std::max(xb, r.x0);
    const int hi = std::min(xe, r.x1 + 1);
    if (lo >= hi) {
      outside += static_cast<std::size_t>(xe - xb);
      return;
    }
    outside += static_cast<std::size_t>((lo - xb) + (xe - hi));
    const std::size_t row = static_cast<std::size_t>(y - r.y0) * stride;
    for (int x = lo; x < hi; ++x) {
      const std::size_t i = row + static_cast<std::size_t>(x - r.x0);
      fg_sum += lm.log_fg[i];
      overlap = overlap || lm.prob[i] > 0.0;
    }
  });
  fg_sum += static_cast<double>(outside) * kLogOfFloor;

  // Background: support pixels outside the closed ground-truth box.
  double bg_sum = 0.0;
  if (!r.empty()) {
    const double bx0 = std::ceil(gt.box.x1);
    const double bx1 = std::floor(gt.box.x2);
    const double by0 = std::ceil(gt.box.y1);
    const double by1 = std::floor(gt.box.y2);
    for (int y = r.y0; y <= r.y1; ++y) {
      const std::size_t row = static_cast<std::size_t>(y - r.y0) * stride;
      const bool row_in_box = y >= by0 && y <= by1;
      for (int x = r.x0; x <= r.x1; ++x) {
        if (row_in_box && x >= bx0 && x <= bx1) continue;
        bg_sum += lm.log_bg[row + static_cast<std::size_t>(x - r.x0)];
      }
    }
  }

  const double norm = static_cast<double>(n_fg);
  SpatialQuality q;
  // Adding +0.0 normalises a negated zero sum.
  q.fg_loss = -fg_sum / norm + 0.0;
  q.bg_loss = -bg_sum / norm + 0.0;
  q.quality = overlap ? std::exp(-(q.fg_loss + q.bg_loss)) : 0.0;
  return q;
}

PairQuality pair_from_logs(const LogMap& lm, const Detection& det, const GroundTruthObject& gt) {
  PairQuality pq;
  pq.label = label_quality(det, gt.class_id);
  if (pq.label == 0.0) return pq;
  const SpatialQuality sq = spatial_from_logs(lm, gt);
  pq.spatial = sq.quality;
  pq.fg_loss = sq.fg_loss;
  pq.bg_loss = sq.bg_loss;
  pq.ppdq = pairwise_pdq(pq.spatial, pq.label);
  return pq;
}

}  // namespace

double label_quality(const Detection& det, std::size_t class_id) {
  if (class_id >= det.label_dist.size()) {
    std::ostringstream os;
    os << "class index " << class_id << " out of range for a " << det.label_dist.size()
       << "-class distribution";
    throw InputError(os.str());
  }
  return det.label_dist[class_id];
}

SpatialQuality spatial_quality(const ProbMap& map, const GroundTruthObject& gt) {
  return spatial_from_logs(LogMap(map), gt);
}

double pairwise_pdq(double spatial, double label) {
  return std::sqrt(spatial * label);
}

PairQuality pair_quality(const ProbMap& map, const Detection& det, const GroundTruthObject& gt) {
  PairQuality pq;
  pq.label = label_quality(det, gt.class_id);
  const SpatialQuality sq = spatial_quality(map, gt);
  pq.spatial = sq.quality;
  pq.fg_loss = sq.fg_loss;
  pq.bg_loss = sq.bg_loss;
  pq.ppdq = pairwise_pdq(pq.spatial, pq.label);
  return pq;
}

std::vector<PairQuality> pair_matrix(const Frame& frame, double k_sigma) {
  const std::size_t nd = frame.detections.size();
  const std::size_t ng = frame.ground_truths.size();
  std::vector<PairQuality> out(nd * ng);
  for (std::size_t j = 0; j < nd; ++j) {
    const Detection& det = frame.detections[j];
    bool any_label = false;
    for (const auto& gt : frame.ground_truths) {
      any_label = any_label || label_quality(det, gt.class_id) > 0.0;
    }
    if (!any_label) continue;
    const LogMap lm(render(det.pbox, frame.width, frame.height, k_sigma));
    for (std::size_t k = 0; k < ng; ++k) {
      out[j * ng + k] = pair_from_logs(lm, det, frame.ground_truths[k]);
    }
  }
  return out;
}

FrameEvaluation match_pairs(std::string frame_id, std::span<const PairQuality> matrix,
                            std::size_t num_detections, std::size_t num_ground_truths) {
  std::vector<double> weights(matrix.size());
  for (std::size_t i = 0; i < matrix.size(); ++i) weights[i] = matrix[i].ppdq;
  const auto row_to_col = max_weight_assignment(weights, num_detections, num_ground_truths);

  FrameEvaluation ev;
  ev.frame_id = std::move(frame_id);
  for (std::size_t j = 0; j < num_detections; ++j) {
    if (row_to_col[j] < 0) continue;
    const auto k = static_cast<std::size_t>(row_to_col[j]);
    const PairQuality& pq = matrix[j * num_ground_truths + k];
    if (pq.ppdq > 0.0) ev.assignments.push_back({j, k, pq});
  }
  ev.tp = ev.assignments.size();
  ev.fp = num_detections - ev.tp;
  ev.fn = num_ground_truths - ev.tp;
  return ev;
}

FrameEvaluation match_frame(const Frame& frame, const EvalOptions& opts) {
  const auto matrix = pair_matrix(frame, opts.k_sigma);
  return match_pairs(frame.frame_id, matrix, frame.detections.size(), frame.ground_truths.size());
}

double pairwise_sum(std::span<const double> values) {
  constexpr std::size_t kBlock = 8;
  if (values.size() <= kBlock) {
    double s = 0.0;
    for (double v : values) s += v;
    return s;
  }
  const std::size_t half = values.size() / 2;
  return pairwise_sum(values.first(half)) + pairwise_sum(values.subspan(half));
}

PdqReport aggregate(std::span<const FrameEvaluation> evals) {
  PdqReport rep;
  std::vector<double> ppdq, spatial, label;
  rep.per_frame.reserve(evals.size());
  for (const auto& ev : evals) {
    rep.n_tp += ev.tp;
    rep.n_fp += ev.fp;
    rep.n_fn += ev.fn;
    FrameSummary fs{ev.frame_id, ev.tp, ev.fp, ev.fn, 0.0};
    std::vector<double> frame_ppdq;
    for (const auto& a : ev.assignments) {
      ppdq.push_back(a.quality.ppdq);
      spatial.push_back(a.quality.spatial);
      label.push_back(a.quality.label);
      frame_ppdq.push_back(a.quality.ppdq);
    }
    fs.ppdq_sum = pairwise_sum(frame_ppdq);
    rep.per_frame.push_back(std::move(fs));
  }
  if (rep.n_tp > 0) {
    const auto n = static_cast<double>(rep.n_tp);
    rep.apdq = pairwise_sum(ppdq) / n;
    rep.avg_spatial = pairwise_sum(spatial) / n;
    rep.avg_label = pairwise_sum(label) / n;
  }
  const std::size_t denom = rep.n_tp + rep.n_fp + rep.n_fn;
  if (denom > 0) {
    rep.pdq = static_cast<double>(rep.n_tp) * rep.apdq / static_cast<double>(denom);
  }
  return rep;
}

PdqReport evaluate(std::span<const Frame> frames, const EvalOptions& opts) {
  std::vector<FrameEvaluation> evals(frames.size());
  parallel_for(frames.size(), opts.threads,
               [&](std::size_t i) { evals[i] = match_frame(frames[i], opts); });
  return aggregate(evals);
}

}  // namespace pdq
