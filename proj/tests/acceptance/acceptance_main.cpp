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

// Acceptance suite. Prints one PASS/FAIL line per criterion and exits
// non-zero when any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <limits>
#include <random>
#include <string>
#include <vector>

#include "pdq/io.hpp"
#include "pdq/metric.hpp"
#include "pdq/postprocess.hpp"
#include "pdq/sweep.hpp"
#include "pdq/synth.hpp"
#include "unit/normal_cdf_oracle.hpp"
#include "unit/test_support.hpp"

namespace {

using namespace pdq;
using Clock = std::chrono::steady_clock;

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      if (detail.size() < 400) detail += (detail.empty() ? "" : "; ") + what;
    }
  }
};

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt(const char* f, double a, double b = 0.0, double c = 0.0) {
  char buf[256];
  std::snprintf(buf, sizeof(buf), f, a, b, c);
  return buf;
}

FrameEvaluation counts_eval(const std::vector<double>& ppdqs, std::size_t fp, std::size_t fn) {
  FrameEvaluation ev;
  for (std::size_t i = 0; i < ppdqs.size(); ++i) {
    PairQuality q;
    q.ppdq = q.spatial = q.label = ppdqs[i];
    ev.assignments.push_back({i, i, q});
  }
  ev.tp = ppdqs.size();
  ev.fp = fp;
  ev.fn = fn;
  return ev;
}

PdqReport aggregate_one(const FrameEvaluation& ev) {
  return aggregate(std::vector<FrameEvaluation>{ev});
}

Outcome equation_exactness() {
  Outcome o;
  const Detection d{LabelDist({0.7, 0.3}), PBox::crisp({0, 0, 10, 10}), "f"};
  o.require(std::abs(label_quality(d, 0) - 0.7) <= 1e-12, "label_quality [0.7,0.3] class 0");
  o.require(std::abs(label_quality(d, 1) - 0.3) <= 1e-12, "label_quality [0.7,0.3] class 1");
  const Detection z{LabelDist({0.0, 1.0}), PBox::crisp({0, 0, 1, 1}), "f"};
  o.require(label_quality(z, 0) == 0.0, "label_quality zero entry");
  o.require(std::abs(pairwise_pdq(1.0, 1.0) - 1.0) <= 1e-12, "pairwise_pdq(1,1)");
  o.require(std::abs(pairwise_pdq(0.25, 1.0) - 0.5) <= 1e-12, "pairwise_pdq(0.25,1)");
  o.require(pairwise_pdq(0.6, 0.0) == 0.0, "pairwise_pdq(0.6,0)");
  o.require(std::abs(aggregate_one(counts_eval({1.0}, 1, 0)).pdq - 0.5) <= 1e-12, "1 TP + 1 FP");
  o.require(aggregate_one(counts_eval({}, 0, 5)).pdq == 0.0, "5 FN only");
  const auto two = aggregate(std::vector<FrameEvaluation>{counts_eval({0.6}, 0, 0), counts_eval({0.8}, 0, 2)});
  o.require(std::abs(two.apdq - 0.7) <= 1e-12 && std::abs(two.pdq - 0.35) <= 1e-12, "two-frame aggregate");
  const std::vector<Detection> box{{LabelDist({1.0}), PBox::crisp({0, 0, 100, 50}), "f"}};
  const auto cov = assign_covariance(box, CovMode::fraction(0.30), CovEntries::Variance);
  const Cov2 expected{30.0, 0.0, 0.0, 15.0};
  o.require(cov[0].pbox.cov_tl == expected && cov[0].pbox.cov_br == expected,
            "covariance (100x50, 30%) != [[30,0],[0,15]]");
  if (o.pass) o.detail = "label, pPDQ and aggregate examples within 1e-12; (100x50, 30%) -> [[30,0],[0,15]] exact";
  return o;
}

// Best total over every partial one-to-one matching, summed in detection
// order.
double exhaustive_best(const std::vector<PairQuality>& m, std::size_t nd, std::size_t ng) {
  std::vector<char> used(ng, 0);
  double best = 0.0;
  std::function<void(std::size_t, double)> go = [&](std::size_t j, double total) {
    if (j == nd) {
      best = std::max(best, total);
      return;
    }
    go(j + 1, total);
    for (std::size_t k = 0; k < ng; ++k) {
      if (used[k] || m[j * ng + k].ppdq <= 0.0) continue;
      used[k] = 1;
      go(j + 1, total + m[j * ng + k].ppdq);
      used[k] = 0;
    }
  };
  go(0, 0.0);
  return best;
}

Outcome matching_oracle() {
  Outcome o;
  std::mt19937_64 rng(20260101);
  std::vector<Frame> frames;
  for (int i = 0; i < 1000; ++i) frames.push_back(testing::random_frame(rng, {}, "m" + std::to_string(i)));
  const auto t0 = Clock::now();
  std::size_t mismatches = 0, nonempty = 0;
  for (const Frame& f : frames) {
    const auto ev = match_frame(f);
    double got = 0.0;
    for (const auto& a : ev.assignments) got += a.quality.ppdq;
    const auto m = pair_matrix(f);
    const double want = exhaustive_best(m, f.detections.size(), f.ground_truths.size());
    if (got != want) ++mismatches;
    if (!ev.assignments.empty()) ++nonempty;
  }
  const double secs = seconds_since(t0);
  o.require(mismatches == 0, std::to_string(mismatches) + " frames differ from enumeration");
  o.require(secs < 10.0, fmt("runtime %.2f s >= 10 s", secs));
  o.require(nonempty > 500, "too few frames with matches");
  if (o.pass) {
    o.detail = fmt("1000 frames (%.0f with matches) equal enumeration exactly in %.2f s", nonempty, secs);
  }
  return o;
}

Outcome perfect_oracle() {
  Outcome o;
  const auto t0 = Clock::now();
  SynthOptions opts;
  opts.frames = 100;
  opts.max_objects = 10;
  opts.width = 640;
  opts.height = 480;
  opts.seed = 1;
  const auto data = synthesize(opts);
  const auto dir = std::filesystem::temp_directory_path() / "pdq_acceptance_perfect";
  std::filesystem::create_directories(dir);
  write_ground_truth(dir / "gt.jsonl", data.ground_truth);
  write_detections(dir / "det.jsonl", data.detections);
  const auto gt = load_ground_truth(dir / "gt.jsonl");
  const auto dets = load_detections(dir / "det.jsonl", gt.manifest);
  EvalOptions eo;
  eo.threads = 1;
  const auto report = evaluate(join_frames(gt, dets), eo);
  const double secs = seconds_since(t0);
  std::filesystem::remove_all(dir);
  o.require(report.pdq == 1.0, fmt("PDQ %.17g != 1.0", report.pdq));
  o.require(report.n_fp == 0 && report.n_fn == 0, "unexpected FP/FN");
  o.require(secs < 30.0, fmt("runtime %.2f s >= 30 s", secs));
  if (o.pass) o.detail = fmt("PDQ == 1.0 exactly over %.0f objects, end to end in %.2f s", report.n_tp, secs);
  return o;
}

Outcome heatmap_correctness() {
  Outcome o;
  std::mt19937_64 rng(777);
  std::uniform_real_distribution<double> coord(0.0, 200.0);
  std::uniform_real_distribution<double> side(0.0, 80.0);
  std::uniform_real_distribution<double> var(0.0, 60.0);
  std::uniform_real_distribution<double> offset(-30.0, 30.0);
  double worst = 0.0;
  int graded = 0;
  for (int i = 0; i < 10000; ++i) {
    const double x1 = coord(rng), y1 = coord(rng);
    const BBox b{x1, y1, x1 + side(rng), y1 + side(rng)};
    const Cov2 tl = Cov2::diag(var(rng), var(rng));
    const Cov2 br = Cov2::diag(var(rng), var(rng));
    const PBox p{b, tl, br};
    const double x = std::round(b.center_x() + offset(rng) + 0.5 * b.width() * offset(rng) / 30.0);
    const double y = std::round(b.center_y() + offset(rng) + 0.5 * b.height() * offset(rng) / 30.0);
    const double got = pixel_prob(p, x, y);
    const double want = testing::oracle_pixel_prob(x, y, b.x1, b.y1, b.x2, b.y2, std::sqrt(tl.xx),
                                                   std::sqrt(tl.yy), std::sqrt(br.xx), std::sqrt(br.yy));
    worst = std::max(worst, std::abs(got - want));
    if (want > 1e-6 && want < 1.0 - 1e-6) ++graded;
  }
  o.require(worst <= 1e-9, fmt("max |error| %.3g > 1e-9", worst));
  o.require(graded >= 3000, "fewer than 3000 samples strictly between 0 and 1");
  std::size_t limit_fail = 0;
  for (int i = 0; i < 2000; ++i) {
    const double x1 = std::round(coord(rng)) + 0.3, y1 = std::round(coord(rng)) + 0.6;
    const BBox b{x1, y1, x1 + std::round(side(rng)) + 0.2, y1 + std::round(side(rng)) + 0.1};
    const double x = std::round(b.center_x() + offset(rng) * 2.0);
    const double y = std::round(b.center_y() + offset(rng) * 2.0);
    const double indicator = b.contains(x, y) ? 1.0 : 0.0;
    for (double v : {0.0, 1e-12, 1e-8}) {
      const PBox p{b, Cov2::diag(v, v), Cov2::diag(v, v)};
      if (pixel_prob(p, x, y) != indicator) ++limit_fail;
    }
  }
  o.require(limit_fail == 0, std::to_string(limit_fail) + " sigma->0 samples differ from the indicator");
  if (o.pass) o.detail = fmt("10000 samples (%.0f graded), max |error| %.3g; sigma->0 equals crisp indicator off-boundary",
                             graded, worst);
  return o;
}

SynthData direction_fixture(const std::string& noise) {
  SynthOptions opts;
  opts.frames = 100;
  opts.max_objects = 10;
  opts.seed = 42;
  opts.noise = NoiseProfile::parse(noise);
  return synthesize(opts);
}

PdqReport evaluate_with(const SynthData& data, const PostProcessConfig& cfg) {
  return evaluate(join_frames(data.ground_truth, apply_pipeline(data.detections, cfg)));
}

Outcome direction_threshold() {
  Outcome o;
  const auto data = direction_fixture("localization,scale_bias=0.1,spurious_rate=1");
  std::size_t total = 0, low = 0;
  for (const auto& fd : data.detections) {
    for (const auto& d : fd.detections) {
      ++total;
      if (d.score() < 0.5) ++low;
    }
  }
  const double frac = static_cast<double>(low) / static_cast<double>(total);
  PostProcessConfig lo;
  lo.score_threshold = 0.0;
  PostProcessConfig hi = lo;
  hi.score_threshold = 0.5;
  const auto a = evaluate_with(data, lo);
  const auto b = evaluate_with(data, hi);
  o.require(frac >= 0.30, fmt("spurious fraction %.3f < 0.30", frac));
  o.require(b.n_fp < a.n_fp, "FP did not decrease");
  o.require(b.pdq > a.pdq, fmt("PDQ %.6f -> %.6f did not rise", a.pdq, b.pdq));
  o.detail = fmt("spurious %.1f%%; PDQ %.4f -> %.4f", 100.0 * frac, a.pdq, b.pdq) + "; FP " +
             std::to_string(a.n_fp) + " -> " + std::to_string(b.n_fp) + (o.pass ? "" : "; " + o.detail);
  return o;
}

Outcome direction_covariance() {
  Outcome o;
  const auto data = direction_fixture("localization,scale_bias=0.1");
  PostProcessConfig zero;
  zero.shrink_factor = 0.0;
  zero.cov_mode = CovMode::fixed(0.0);
  PostProcessConfig frac = zero;
  frac.cov_mode = CovMode::fraction(0.2);
  const auto a = evaluate_with(data, zero);
  const auto b = evaluate_with(data, frac);
  o.require(b.pdq > a.pdq, "fraction 0.2 did not beat zero covariance");
  o.detail = fmt("PDQ zero %.4f < fraction-0.2 %.4f", a.pdq, b.pdq) + (o.pass ? "" : "; " + o.detail);
  return o;
}

Outcome direction_shrink() {
  Outcome o;
  const auto data = direction_fixture("localization,scale_bias=0.1");
  PostProcessConfig cfg;
  cfg.cov_mode = CovMode::fraction(0.2);
  double pdq[3];
  const double factors[3] = {0.0, 0.1, 0.2};
  for (int i = 0; i < 3; ++i) {
    cfg.shrink_factor = factors[i];
    pdq[i] = evaluate_with(data, cfg).pdq;
  }
  o.require(pdq[1] > pdq[0] && pdq[1] > pdq[2], "shrink 0.1 is not the best of {0, 0.1, 0.2}");
  o.detail = fmt("PDQ shrink 0.0 %.4f < 0.1 %.4f > 0.2 %.4f", pdq[0], pdq[1], pdq[2]) +
             (o.pass ? "" : "; " + o.detail);
  return o;
}

// Turning one FN into a TP of quality q while adding one FP.
Outcome tradeoff_property() {
  Outcome o;
  std::mt19937_64 rng(31337);
  std::uniform_int_distribution<int> count(0, 40);
  std::uniform_int_distribution<int> grain(0, 1024);
  std::size_t ties = 0, bad = 0;
  for (int t = 0; t < 1000; ++t) {
    const std::size_t tp = static_cast<std::size_t>(count(rng));
    const std::size_t fp = static_cast<std::size_t>(count(rng));
    const std::size_t fn = 1 + static_cast<std::size_t>(count(rng));
    std::vector<double> ppdqs(tp);
    std::int64_t sum_units = 0;
    for (auto& v : ppdqs) {
      const int g = 1 + grain(rng) % 1024;
      sum_units += g;
      v = g / 1024.0;
    }
    const auto denom = static_cast<std::int64_t>(tp + fp + fn);
    std::int64_t q_units = 1 + grain(rng) % 1024;
    // Force an exact tie q == PDQ on some tuples when representable.
    if (t % 10 == 0 && sum_units % denom == 0 && sum_units / denom >= 1) q_units = sum_units / denom;
    const double q = q_units / 1024.0;
    const double before = aggregate_one(counts_eval(ppdqs, fp, fn)).pdq;
    auto after_ppdqs = ppdqs;
    after_ppdqs.push_back(q);
    const double after = aggregate_one(counts_eval(after_ppdqs, fp + 1, fn - 1)).pdq;
    // q > S / D  <=>  q_units * D > sum_units, exact in integers.
    const std::int64_t lhs = q_units * denom;
    if (lhs == sum_units) {
      ++ties;
      if (std::abs(after - before) > 1e-15) ++bad;
    } else if ((after > before) != (lhs > sum_units)) {
      ++bad;
    }
  }
  o.require(bad == 0, std::to_string(bad) + " tuples violate the iff");
  if (o.pass) o.detail = "1000 tuples (" + std::to_string(ties) + " exact ties): PDQ rises iff q > PDQ";
  return o;
}

Outcome determinism() {
  Outcome o;
  const auto data = direction_fixture("mixed");
  const auto frames = join_frames(data.ground_truth, apply_pipeline(data.detections, PostProcessConfig{}));
  EvalOptions one;
  one.threads = 1;
  const auto base = evaluate(frames, one);
  const auto json1 = format_report(base, ReportFormat::Json);
  const auto csv1 = format_report(base, ReportFormat::Csv);
  for (unsigned n : {2u, 4u, 7u}) {
    EvalOptions many;
    many.threads = n;
    const auto r = evaluate(frames, many);
    o.require(format_report(r, ReportFormat::Json) == json1, "JSON differs at " + std::to_string(n) + " threads");
    o.require(format_report(r, ReportFormat::Csv) == csv1, "CSV differs at " + std::to_string(n) + " threads");
    o.require(r == base, "report fields differ at " + std::to_string(n) + " threads");
  }
  if (o.pass) o.detail = "100-frame fixture: reports byte-identical for 1, 2, 4 and 7 threads";
  return o;
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    Outcome (*run)();
  };
  const Criterion criteria[] = {
      {"equation-exactness", equation_exactness},
      {"matching-oracle", matching_oracle},
      {"perfect-oracle", perfect_oracle},
      {"heatmap-correctness", heatmap_correctness},
      {"direction-threshold", direction_threshold},
      {"direction-covariance", direction_covariance},
      {"direction-shrink", direction_shrink},
      {"fp-tp-tradeoff", tradeoff_property},
      {"determinism", determinism},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    std::printf("%s %s: %s\n", o.pass ? "PASS" : "FAIL", c.name, o.detail.c_str());
    std::fflush(stdout);
    if (!o.pass) ++failures;
  }
  return failures == 0 ? 0 : 1;
}
