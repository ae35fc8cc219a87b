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

#include "pdq/postprocess.hpp"

#include <charconv>
#include <cmath>

namespace pdq {
namespace {

void require_unit(double v, const char* field) {
  if (!(v >= 0.0 && v <= 1.0)) {
    throw InputError(std::string(field) + " must lie in [0, 1], got " + std::to_string(v));
  }
}

double parse_number(const std::string& s, const std::string& context) {
  double v = 0.0;
  const auto* first = s.data();
  const auto* last = s.data() + s.size();
  const auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc{} || ptr != last || s.empty()) {
    throw InputError("cannot parse number '" + s + "' in " + context);
  }
  return v;
}

std::string format_number(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

}  // namespace

std::string CovMode::to_string() const {
  return std::string(kind == Kind::Fixed ? "fixed:" : "fraction:") + format_number(value);
}

CovMode CovMode::parse(const std::string& text) {
  const auto colon = text.find(':');
  if (colon == std::string::npos) {
    throw InputError("cov_mode '" + text + "' must look like fixed:<v> or fraction:<f>");
  }
  const std::string kind = text.substr(0, colon);
  const double v = parse_number(text.substr(colon + 1), "cov_mode");
  if (kind == "fixed") return fixed(v);
  if (kind == "fraction") return fraction(v);
  throw InputError("unknown cov_mode kind '" + kind + "'");
}

std::string to_string(CovEntries e) {
  return e == CovEntries::Variance ? "variance" : "stddev";
}

CovEntries parse_cov_entries(const std::string& text) {
  if (text == "variance") return CovEntries::Variance;
  if (text == "stddev") return CovEntries::StdDev;
  throw InputError("cov_entries must be 'variance' or 'stddev', got '" + text + "'");
}

void PostProcessConfig::validate() const {
  require_unit(score_threshold, "score_threshold");
  require_unit(recover_iou_threshold, "recover_iou_threshold");
  require_unit(recover_score_floor, "recover_score_floor");
  if (!(shrink_factor >= 0.0 && shrink_factor < 1.0)) {
    throw InputError("shrink_factor must lie in [0, 1), got " + std::to_string(shrink_factor));
  }
  if (cov_mode.kind == CovMode::Kind::Fraction) {
    require_unit(cov_mode.value, "cov_mode fraction");
  } else if (!(cov_mode.value >= 0.0 && std::isfinite(cov_mode.value))) {
    throw InputError("cov_mode fixed value must be finite and non-negative");
  }
}

ScoreSplit filter_by_score(std::span<const Detection> dets, double threshold) {
  ScoreSplit split;
  for (const auto& d : dets) {
    (d.score() >= threshold ? split.kept : split.discarded).push_back(d);
  }
  return split;
}

Detection to_one_hot(const Detection& det) {
  Detection out = det;
  if (det.label_dist.size() > 0) {
    out.label_dist = LabelDist::one_hot(det.label_dist.size(), det.label());
  }
  return out;
}

std::vector<Detection> set_scores_to_one(std::span<const Detection> dets) {
  std::vector<Detection> out;
  out.reserve(dets.size());
  for (const auto& d : dets) out.push_back(to_one_hot(d));
  return out;
}

std::vector<Detection> recover_confusing(std::span<const Detection> kept,
                                         std::span<const Detection> discarded,
                                         const PostProcessConfig& cfg) {
  std::vector<Detection> out(kept.begin(), kept.end());
  std::vector<char> recovered(discarded.size(), 0);
  for (std::size_t a = 0; a < discarded.size(); ++a) {
    if (discarded[a].score() < cfg.recover_score_floor) continue;
    for (std::size_t b = a + 1; b < discarded.size(); ++b) {
      if (discarded[b].score() < cfg.recover_score_floor) continue;
      if (discarded[a].label() == discarded[b].label()) continue;
      if (iou(discarded[a].pbox.box, discarded[b].pbox.box) >= cfg.recover_iou_threshold) {
        recovered[a] = recovered[b] = 1;
      }
    }
  }
  for (std::size_t i = 0; i < discarded.size(); ++i) {
    if (recovered[i]) out.push_back(discarded[i]);
  }
  return out;
}

std::vector<Detection> shrink_boxes(std::span<const Detection> dets, double factor) {
  std::vector<Detection> out(dets.begin(), dets.end());
  if (factor == 0.0) return out;
  for (auto& d : out) {
    BBox& b = d.pbox.box;
    const double dx = 0.5 * factor * b.width();
    const double dy = 0.5 * factor * b.height();
    b = BBox{b.x1 + dx, b.y1 + dy, b.x2 - dx, b.y2 - dy};
  }
  return out;
}

std::vector<Detection> assign_covariance(std::span<const Detection> dets, const CovMode& mode,
                                         CovEntries entries) {
  std::vector<Detection> out(dets.begin(), dets.end());
  for (auto& d : out) {
    double ex = mode.value;
    double ey = mode.value;
    if (mode.kind == CovMode::Kind::Fraction) {
      ex = mode.value * d.pbox.box.width();
      ey = mode.value * d.pbox.box.height();
    }
    if (entries == CovEntries::StdDev) {
      ex *= ex;
      ey *= ey;
    }
    d.pbox.cov_tl = Cov2::diag(ex, ey);
    d.pbox.cov_br = Cov2::diag(ex, ey);
  }
  return out;
}

std::vector<Detection> run_pipeline(std::span<const Detection> dets, const PostProcessConfig& cfg) {
  cfg.validate();
  ScoreSplit split = filter_by_score(dets, cfg.score_threshold);
  std::vector<Detection> out = std::move(split.kept);
  if (cfg.set_scores_to_one) out = set_scores_to_one(out);
  if (cfg.recover_confusing) {
    const std::size_t n_kept = out.size();
    out = recover_confusing(out, split.discarded, cfg);
    if (cfg.set_scores_to_one) {
      for (std::size_t i = n_kept; i < out.size(); ++i) out[i] = to_one_hot(out[i]);
    }
  }
  out = shrink_boxes(out, cfg.shrink_factor);
  return assign_covariance(out, cfg.cov_mode, cfg.cov_entries);
}

}  // namespace pdq
