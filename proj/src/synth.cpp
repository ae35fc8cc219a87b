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

#include "pdq/synth.hpp"

#include <charconv>
#include <cmath>
#include <numbers>
#include <sstream>

namespace pdq {
namespace {

constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

std::uint64_t mix(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

NoiseProfile preset(const std::string& name) {
  NoiseProfile p;
  if (name == "none") return p;
  if (name == "localization") {
    p.loc_sigma = 1.0;
    p.loc_sigma_rel = 0.05;
    return p;
  }
  if (name == "spurious") {
    p.spurious_rate = 1.0;
    return p;
  }
  if (name == "confusing") {
    p.ambiguous_rate = 0.3;
    p.miss_rate = 0.1;
    return p;
  }
  if (name == "mixed") {
    p.loc_sigma = 1.0;
    p.loc_sigma_rel = 0.05;
    p.label_confusion = 0.05;
    p.score_noise = 0.4;
    p.spurious_rate = 1.0;
    p.miss_rate = 0.1;
    p.ambiguous_rate = 0.1;
    return p;
  }
  throw InputError("unknown noise preset '" + name + "'");
}

void set_field(NoiseProfile& p, const std::string& key, const std::string& value) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), v);
  if (ec != std::errc{} || ptr != value.data() + value.size() || value.empty()) {
    throw InputError("noise value '" + value + "' for '" + key + "' is not a number");
  }
  if (key == "loc_sigma") p.loc_sigma = v;
  else if (key == "loc_sigma_rel") p.loc_sigma_rel = v;
  else if (key == "scale_bias") p.scale_bias = v;
  else if (key == "label_confusion") p.label_confusion = v;
  else if (key == "score_noise") p.score_noise = v;
  else if (key == "spurious_rate") p.spurious_rate = v;
  else if (key == "miss_rate") p.miss_rate = v;
  else if (key == "ambiguous_rate") p.ambiguous_rate = v;
  else throw InputError("unknown noise parameter '" + key + "'");
}

BBox jitter(const BBox& b, double sigma_x, double sigma_y, int width, int height, SplitMix64& rng) {
  double x1 = rng.normal(b.x1, sigma_x);
  double y1 = rng.normal(b.y1, sigma_y);
  double x2 = rng.normal(b.x2, sigma_x);
  double y2 = rng.normal(b.y2, sigma_y);
  const double wmax = width - 1;
  const double hmax = height - 1;
  x1 = std::clamp(x1, 0.0, wmax);
  x2 = std::clamp(x2, 0.0, wmax);
  y1 = std::clamp(y1, 0.0, hmax);
  y2 = std::clamp(y2, 0.0, hmax);
  if (x1 > x2) std::swap(x1, x2);
  if (y1 > y2) std::swap(y1, y2);
  return {x1, y1, x2, y2};
}

std::size_t other_class(std::size_t cls, std::size_t num_classes, SplitMix64& rng) {
  if (num_classes < 2) return cls;
  const auto r = static_cast<std::size_t>(rng.uniform_int(0, static_cast<std::int64_t>(num_classes) - 2));
  return r >= cls ? r + 1 : r;
}

SegMask ellipse_mask(int width, int height, const BBox& box) {
  std::vector<std::uint8_t> bitmap(static_cast<std::size_t>(width) * height, 0);
  const double cx = box.center_x(), cy = box.center_y();
  const double rx = 0.5 * box.width(), ry = 0.5 * box.height();
  for (int y = static_cast<int>(box.y1); y <= static_cast<int>(box.y2); ++y) {
    for (int x = static_cast<int>(box.x1); x <= static_cast<int>(box.x2); ++x) {
      const double dx = (x - cx) / rx, dy = (y - cy) / ry;
      if (dx * dx + dy * dy <= 1.0) bitmap[static_cast<std::size_t>(y) * width + x] = 1;
    }
  }
  return SegMask::from_bitmap(width, height, bitmap);
}

}  // namespace

MaskShape parse_mask_shape(const std::string& text) {
  if (text == "rect") return MaskShape::Rectangle;
  if (text == "ellipse") return MaskShape::Ellipse;
  throw InputError("mask shape must be 'rect' or 'ellipse', got '" + text + "'");
}

std::uint64_t SplitMix64::next() {
  state_ += kGolden;
  return mix(state_);
}

double SplitMix64::uniform() {
  return static_cast<double>(next() >> 11) * 0x1.0p-53;
}

std::int64_t SplitMix64::uniform_int(std::int64_t lo, std::int64_t hi) {
  if (hi <= lo) return lo;
  const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
  return lo + static_cast<std::int64_t>(next() % span);
}

double SplitMix64::normal(double mean, double stddev) {
  if (stddev == 0.0) {
    next();
    next();
    return mean;
  }
  const double u1 = 1.0 - uniform();  // (0, 1]
  const double u2 = uniform();
  return mean + stddev * std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

SplitMix64 SplitMix64::split(std::uint64_t stream) const {
  return SplitMix64(mix(state_ ^ mix(stream + kGolden)));
}

NoiseProfile NoiseProfile::parse(const std::string& text) {
  NoiseProfile p;
  std::stringstream ss(text);
  std::string item;
  bool first = true;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    const auto eq = item.find('=');
    if (eq == std::string::npos) {
      if (!first) throw InputError("noise preset '" + item + "' must come first");
      p = preset(item);
    } else {
      set_field(p, item.substr(0, eq), item.substr(eq + 1));
    }
    first = false;
  }
  p.validate();
  return p;
}

void NoiseProfile::validate() const {
  auto prob = [](double v, const char* name) {
    if (!(v >= 0.0 && v <= 1.0)) throw InputError(std::string(name) + " must lie in [0, 1]");
  };
  prob(label_confusion, "label_confusion");
  prob(score_noise, "score_noise");
  prob(miss_rate, "miss_rate");
  prob(ambiguous_rate, "ambiguous_rate");
  if (!(loc_sigma >= 0.0) || !(loc_sigma_rel >= 0.0) || !(spurious_rate >= 0.0) ||
      !(scale_bias >= 0.0)) {
    throw InputError("loc_sigma, loc_sigma_rel, scale_bias and spurious_rate must be non-negative");
  }
}

SynthData synthesize(const SynthOptions& opts) {
  opts.noise.validate();
  if (opts.frames == 0) throw InputError("synth needs at least one frame");
  if (opts.num_classes == 0) throw InputError("synth needs at least one class");
  if (opts.width < 2 || opts.height < 2) throw InputError("synth frame is too small");
  const int max_w = std::min(opts.max_box, opts.width - 1);
  const int max_h = std::min(opts.max_box, opts.height - 1);
  const int min_side = std::max(1, std::min({opts.min_box, max_w, max_h}));
  const NoiseProfile& nz = opts.noise;

  SynthData data;
  for (std::size_t c = 0; c < opts.num_classes; ++c) {
    data.ground_truth.manifest.class_names.push_back("class_" + std::to_string(c));
  }
  const SplitMix64 root(opts.seed);
  for (std::size_t fi = 0; fi < opts.frames; ++fi) {
    SplitMix64 rng = root.split(fi);
    Frame frame;
    frame.frame_id = "frame_" + std::to_string(fi);
    frame.width = opts.width;
    frame.height = opts.height;
    FrameDetections fd;
    fd.frame_id = frame.frame_id;

    const auto n_obj = static_cast<std::size_t>(
        rng.uniform_int(1, static_cast<std::int64_t>(std::max<std::size_t>(1, opts.max_objects))));
    for (std::size_t k = 0; k < n_obj; ++k) {
      const auto bw = static_cast<int>(rng.uniform_int(min_side, max_w));
      const auto bh = static_cast<int>(rng.uniform_int(min_side, max_h));
      const auto x = static_cast<double>(rng.uniform_int(0, opts.width - 1 - bw));
      const auto y = static_cast<double>(rng.uniform_int(0, opts.height - 1 - bh));
      GroundTruthObject gt;
      gt.frame_id = frame.frame_id;
      gt.class_id = static_cast<std::size_t>(rng.uniform_int(0, static_cast<std::int64_t>(opts.num_classes) - 1));
      gt.box = BBox{x, y, x + bw, y + bh};
      if (opts.mask_shape == MaskShape::Ellipse) {
        gt.mask = ellipse_mask(opts.width, opts.height, gt.box);
        gt.box = *gt.mask.hull();
      } else {
        gt.mask = SegMask::from_box(opts.width, opts.height, gt.box);
      }
      frame.ground_truths.push_back(gt);

      // Every random quantity is drawn unconditionally.
      const bool missed = rng.bernoulli(nz.miss_rate);
      const bool ambiguous = rng.bernoulli(nz.ambiguous_rate);
      const bool confused = rng.bernoulli(nz.label_confusion);
      const std::size_t wrong = other_class(gt.class_id, opts.num_classes, rng);
      const double score = 1.0 - rng.uniform(0.0, nz.score_noise);
      const std::size_t second = other_class(gt.class_id, opts.num_classes, rng);
      const std::size_t top = confused ? wrong : gt.class_id;
      const std::size_t alt = other_class(top, opts.num_classes, rng);
      const double second_frac = rng.uniform();
      const double amb_a = rng.uniform(0.2, 0.45);
      const double amb_b = rng.uniform(0.2, 0.45);
      const double sx = nz.loc_sigma + nz.loc_sigma_rel * bw;
      const double sy = nz.loc_sigma + nz.loc_sigma_rel * bh;
      const double gx = 0.5 * nz.scale_bias * gt.box.width();
      const double gy = 0.5 * nz.scale_bias * gt.box.height();
      const BBox grown{gt.box.x1 - gx, gt.box.y1 - gy, gt.box.x2 + gx, gt.box.y2 + gy};
      const BBox det_box = jitter(grown, sx, sy, opts.width, opts.height, rng);

      if (!missed) {
        std::vector<double> probs(opts.num_classes, 0.0);
        probs[top] = score;
        if (score < 1.0 && opts.num_classes > 1) {
          probs[alt] = second_frac * std::min(1.0 - score, score);
        }
        fd.detections.push_back({LabelDist(std::move(probs)), PBox::crisp(det_box), frame.frame_id});
      } else if (ambiguous && opts.num_classes > 1) {
        std::vector<double> pa(opts.num_classes, 0.0), pb(opts.num_classes, 0.0);
        pa[gt.class_id] = amb_a;
        pb[second] = amb_b;
        fd.detections.push_back({LabelDist(std::move(pa)), PBox::crisp(det_box), frame.frame_id});
        fd.detections.push_back({LabelDist(std::move(pb)), PBox::crisp(det_box), frame.frame_id});
      }

      auto n_spurious = static_cast<std::size_t>(std::floor(nz.spurious_rate));
      if (rng.bernoulli(nz.spurious_rate - std::floor(nz.spurious_rate))) ++n_spurious;
      for (std::size_t s = 0; s < n_spurious; ++s) {
        const auto sw = static_cast<double>(rng.uniform_int(min_side, max_w));
        const auto sh = static_cast<double>(rng.uniform_int(min_side, max_h));
        const double sxp = rng.uniform(0.0, opts.width - 1 - sw);
        const double syp = rng.uniform(0.0, opts.height - 1 - sh);
        std::vector<double> probs(opts.num_classes, 0.0);
        probs[static_cast<std::size_t>(rng.uniform_int(0, static_cast<std::int64_t>(opts.num_classes) - 1))] =
            rng.uniform(0.05, 0.45);
        fd.detections.push_back({LabelDist(std::move(probs)),
                                 PBox::crisp(BBox{sxp, syp, sxp + sw, syp + sh}), frame.frame_id});
      }
    }
    data.ground_truth.manifest.add_frame({frame.frame_id, frame.width, frame.height});
    data.ground_truth.frames.push_back(std::move(frame));
    data.detections.push_back(std::move(fd));
  }
  return data;
}

}  // namespace pdq
