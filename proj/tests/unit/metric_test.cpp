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

#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "pdq/metric.hpp"
#include "unit/test_support.hpp"

namespace pdq {
namespace {

GroundTruthObject object(std::size_t cls, BBox box, int w = 10, int h = 10) {
  GroundTruthObject g;
  g.frame_id = "f";
  g.class_id = cls;
  g.mask = SegMask::from_box(w, h, box);
  g.box = box;
  return g;
}

Detection detection(std::vector<double> probs, PBox pbox) {
  return {LabelDist(std::move(probs)), pbox, "f"};
}

TEST(LabelQualityTest, ReadsGroundTruthClassEntry) {
  const Detection d = detection({0.7, 0.3}, PBox::crisp({0, 0, 1, 1}));
  EXPECT_EQ(label_quality(d, 0), 0.7);
  EXPECT_EQ(label_quality(detection({0.0, 1.0}, PBox::crisp({0, 0, 1, 1})), 0), 0.0);
  EXPECT_EQ(label_quality(detection({0.0, 1.0}, PBox::crisp({0, 0, 1, 1})), 1), 1.0);
  EXPECT_THROW(label_quality(d, 2), InputError);
}

TEST(SpatialQualityTest, PerfectMapScoresOne) {
  const auto gt = object(0, {2, 2, 4, 4});
  std::vector<double> v(25, 0.0);
  for (int y = 2; y <= 4; ++y)
    for (int x = 2; x <= 4; ++x) v[static_cast<std::size_t>(y - 1) * 5 + (x - 1)] = 1.0;
  const ProbMap pm(PixelRect{1, 1, 5, 5}, v);
  const auto q = spatial_quality(pm, gt);
  EXPECT_EQ(q.quality, 1.0);
  EXPECT_EQ(q.fg_loss, 0.0);
  EXPECT_EQ(q.bg_loss, 0.0);
}

TEST(SpatialQualityTest, ForegroundLossOfOne) {
  const auto gt = object(0, {3, 3, 3, 3});
  const ProbMap pm(PixelRect{3, 3, 3, 3}, {std::exp(-1.0)});
  const auto q = spatial_quality(pm, gt);
  EXPECT_NEAR(q.fg_loss, 1.0, 1e-15);
  EXPECT_NEAR(q.quality, std::exp(-1.0), 1e-12);
}

TEST(SpatialQualityTest, BackgroundLossOfOne) {
  const auto gt = object(0, {3, 3, 3, 3});
  const ProbMap pm(PixelRect{3, 3, 4, 3}, {1.0, 1.0 - std::exp(-1.0)});
  const auto q = spatial_quality(pm, gt);
  EXPECT_EQ(q.fg_loss, 0.0);
  EXPECT_NEAR(q.bg_loss, 1.0, 1e-12);
  EXPECT_NEAR(q.quality, std::exp(-1.0), 1e-12);
}

TEST(SpatialQualityTest, PixelsInsideBoxButOutsideMaskAreFree) {
  // Mask covers only the left column of the box; the right column is
  // neither foreground nor background.
  GroundTruthObject gt = object(0, {3, 3, 3, 4});
  gt.box = {3, 3, 4, 4};
  const ProbMap pm(PixelRect{3, 3, 4, 4}, {1.0, 1.0, 1.0, 1.0});
  EXPECT_EQ(spatial_quality(pm, gt).quality, 1.0);
}

TEST(SpatialQualityTest, MissingForegroundIsFiniteAndTiny) {
  const auto gt = object(0, {2, 2, 3, 2});
  const ProbMap pm(PixelRect{2, 2, 3, 2}, {1.0, 0.0});
  const auto q = spatial_quality(pm, gt);
  EXPECT_TRUE(std::isfinite(q.fg_loss));
  EXPECT_NEAR(q.fg_loss, -std::log(kLogFloor) / 2.0, 1e-12);
  EXPECT_GT(q.quality, 0.0);
  EXPECT_LT(q.quality, 1e-6);
}

TEST(SpatialQualityTest, NoOverlapIsZero) {
  const auto gt = object(0, {1, 1, 2, 2});
  const ProbMap pm(PixelRect{6, 6, 7, 7}, {1.0, 1.0, 1.0, 1.0});
  EXPECT_EQ(spatial_quality(pm, gt).quality, 0.0);
}

TEST(SpatialQualityTest, EmptyMaskRejected) {
  GroundTruthObject gt;
  gt.frame_id = "f";
  gt.mask = SegMask::from_rle(4, 4, {16});
  gt.box = {0, 0, 1, 1};
  EXPECT_THROW(spatial_quality(ProbMap{}, gt), InputError);
}

TEST(PairwisePdqTest, GeometricMean) {
  EXPECT_EQ(pairwise_pdq(1.0, 1.0), 1.0);
  EXPECT_EQ(pairwise_pdq(0.25, 1.0), 0.5);
  EXPECT_EQ(pairwise_pdq(0.6, 0.0), 0.0);
}

TEST(MatchFrameTest, SinglePair) {
  Frame f;
  f.frame_id = "f";
  f.width = f.height = 10;
  f.ground_truths.push_back(object(0, {2, 2, 6, 6}));
  f.detections.push_back(detection({0.64, 0.36}, PBox::crisp({2, 2, 6, 6})));
  const auto ev = match_frame(f);
  EXPECT_EQ(ev.tp, 1u);
  EXPECT_EQ(ev.fp, 0u);
  EXPECT_EQ(ev.fn, 0u);
  ASSERT_EQ(ev.assignments.size(), 1u);
  EXPECT_NEAR(ev.assignments[0].quality.ppdq, 0.8, 1e-15);
}

TEST(MatchFrameTest, DetectionsWithoutObjectsAreFalsePositives) {
  Frame f;
  f.frame_id = "f";
  f.width = f.height = 10;
  f.detections.push_back(detection({1.0}, PBox::crisp({1, 1, 3, 3})));
  f.detections.push_back(detection({1.0}, PBox::crisp({4, 4, 6, 6})));
  const auto ev = match_frame(f);
  EXPECT_EQ(ev.tp, 0u);
  EXPECT_EQ(ev.fp, 2u);
  EXPECT_EQ(ev.fn, 0u);
}

TEST(MatchFrameTest, WrongClassNeverMatches) {
  Frame f;
  f.frame_id = "f";
  f.width = f.height = 10;
  f.ground_truths.push_back(object(1, {2, 2, 6, 6}));
  f.detections.push_back(detection({1.0, 0.0}, PBox::crisp({2, 2, 6, 6})));
  const auto ev = match_frame(f);
  EXPECT_EQ(ev.tp, 0u);
  EXPECT_EQ(ev.fp, 1u);
  EXPECT_EQ(ev.fn, 1u);
}

TEST(MatchFrameTest, OptimalAgainstBruteForceOnRandomFrames) {
  std::mt19937_64 rng(77);
  for (int t = 0; t < 200; ++t) {
    const Frame f = testing::random_frame(rng, {});
    const auto matrix = pair_matrix(f);
    std::vector<double> w(matrix.size());
    for (std::size_t i = 0; i < w.size(); ++i) w[i] = matrix[i].ppdq;
    const auto ev = match_frame(f);
    double got = 0.0;
    for (const auto& a : ev.assignments) got += a.quality.ppdq;
    EXPECT_NEAR(got, testing::brute_force_best_total(w, f.detections.size(), f.ground_truths.size()),
                1e-12);
    EXPECT_EQ(ev.tp, ev.assignments.size());
    EXPECT_EQ(ev.fp + ev.tp, f.detections.size());
    EXPECT_EQ(ev.fn + ev.tp, f.ground_truths.size());
    for (const auto& a : ev.assignments) {
      EXPECT_GT(a.quality.ppdq, 0.0);
      EXPECT_NEAR(a.quality.ppdq, std::sqrt(a.quality.spatial * a.quality.label), 1e-12);
    }
  }
}

TEST(MatchFrameTest, BeatsRandomPermutations) {
  std::mt19937_64 rng(8);
  for (int t = 0; t < 100; ++t) {
    const Frame f = testing::random_frame(rng, {64, 64, 8, 8, 2});
    const auto matrix = pair_matrix(f);
    const auto ev = match_frame(f);
    double best = 0.0;
    for (const auto& a : ev.assignments) best += a.quality.ppdq;
    const std::size_t nd = f.detections.size(), ng = f.ground_truths.size();
    std::vector<std::size_t> perm(std::max(nd, ng));
    std::iota(perm.begin(), perm.end(), 0);
    for (int k = 0; k < 20; ++k) {
      std::shuffle(perm.begin(), perm.end(), rng);
      double s = 0.0;
      for (std::size_t j = 0; j < nd; ++j) {
        if (perm[j] < ng) s += matrix[j * ng + perm[j]].ppdq;
      }
      EXPECT_LE(s, best + 1e-12);
    }
  }
}

TEST(MatchFrameTest, PermutationInvariance) {
  std::mt19937_64 rng(21);
  for (int t = 0; t < 50; ++t) {
    Frame f = testing::random_frame(rng, {});
    const auto base = aggregate(std::vector<FrameEvaluation>{match_frame(f)});
    std::shuffle(f.detections.begin(), f.detections.end(), rng);
    std::shuffle(f.ground_truths.begin(), f.ground_truths.end(), rng);
    const auto shuffled = aggregate(std::vector<FrameEvaluation>{match_frame(f)});
    EXPECT_EQ(base.n_tp, shuffled.n_tp);
    EXPECT_EQ(base.n_fp, shuffled.n_fp);
    EXPECT_EQ(base.n_fn, shuffled.n_fn);
    EXPECT_NEAR(base.pdq, shuffled.pdq, 1e-12);
    EXPECT_NEAR(base.avg_spatial, shuffled.avg_spatial, 1e-12);
  }
}

TEST(PairMatrixTest, RemovingADetectionLeavesOtherPairsUnchanged) {
  std::mt19937_64 rng(31);
  for (int t = 0; t < 30; ++t) {
    Frame f = testing::random_frame(rng, {});
    if (f.detections.size() < 2) continue;
    const auto full = pair_matrix(f);
    const std::size_t ng = f.ground_truths.size();
    f.detections.erase(f.detections.begin());
    const auto reduced = pair_matrix(f);
    for (std::size_t j = 0; j < f.detections.size(); ++j) {
      for (std::size_t k = 0; k < ng; ++k) {
        EXPECT_EQ(reduced[j * ng + k].ppdq, full[(j + 1) * ng + k].ppdq);
      }
    }
  }
}

TEST(PairMatrixTest, QualitiesInUnitInterval) {
  std::mt19937_64 rng(41);
  for (int t = 0; t < 100; ++t) {
    const Frame f = testing::random_frame(rng, {});
    for (const auto& q : pair_matrix(f)) {
      for (double v : {q.spatial, q.label, q.ppdq}) {
        EXPECT_GE(v, 0.0);
        EXPECT_LE(v, 1.0);
      }
      EXPECT_GE(q.fg_loss, 0.0);
      EXPECT_GE(q.bg_loss, 0.0);
    }
  }
}

FrameEvaluation synthetic_eval(std::vector<double> ppdqs, std::size_t fp, std::size_t fn) {
  FrameEvaluation ev;
  for (std::size_t i = 0; i < ppdqs.size(); ++i) {
    PairQuality q;
    q.ppdq = ppdqs[i];
    q.spatial = ppdqs[i];
    q.label = ppdqs[i];
    ev.assignments.push_back({i, i, q});
  }
  ev.tp = ppdqs.size();
  ev.fp = fp;
  ev.fn = fn;
  return ev;
}

TEST(AggregateTest, OneTruePositiveOneFalsePositive) {
  const auto r = aggregate(std::vector<FrameEvaluation>{synthetic_eval({1.0}, 1, 0)});
  EXPECT_NEAR(r.pdq, 0.5, 1e-12);
}

TEST(AggregateTest, OnlyFalseNegatives) {
  const auto r = aggregate(std::vector<FrameEvaluation>{synthetic_eval({}, 0, 5)});
  EXPECT_EQ(r.pdq, 0.0);
  EXPECT_EQ(r.n_fn, 5u);
}

TEST(AggregateTest, TwoFrames) {
  const auto r = aggregate(
      std::vector<FrameEvaluation>{synthetic_eval({0.6}, 0, 0), synthetic_eval({0.8}, 0, 2)});
  EXPECT_NEAR(r.apdq, 0.7, 1e-12);
  EXPECT_NEAR(r.pdq, 0.35, 1e-12);
  EXPECT_EQ(r.n_tp, 2u);
  EXPECT_EQ(r.n_fn, 2u);
}

TEST(AggregateTest, EmptyDatasetIsZero) {
  const auto r = aggregate(std::vector<FrameEvaluation>{});
  EXPECT_EQ(r.pdq, 0.0);
  EXPECT_EQ(r.apdq, 0.0);
}

TEST(AggregateTest, ReportInvariantHolds) {
  std::mt19937_64 rng(12);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int t = 0; t < 200; ++t) {
    std::vector<FrameEvaluation> evals;
    for (int f = 0; f < 5; ++f) {
      std::vector<double> p(rng() % 4);
      for (auto& v : p) v = u(rng);
      evals.push_back(synthetic_eval(p, rng() % 3, rng() % 3));
    }
    const auto r = aggregate(evals);
    const std::size_t denom = r.n_tp + r.n_fp + r.n_fn;
    const double expected = denom == 0 ? 0.0 : static_cast<double>(r.n_tp) * r.apdq / denom;
    EXPECT_NEAR(r.pdq, expected, 1e-12);
    EXPECT_GE(r.pdq, 0.0);
    EXPECT_LE(r.pdq, 1.0);
  }
}

TEST(AggregateTest, AddingFalsePositiveLowersScore) {
  const auto a = aggregate(std::vector<FrameEvaluation>{synthetic_eval({0.9, 0.5}, 1, 1)});
  const auto b = aggregate(std::vector<FrameEvaluation>{synthetic_eval({0.9, 0.5}, 2, 1)});
  EXPECT_LT(b.pdq, a.pdq);
}

TEST(PairwiseSumTest, MatchesNaiveOnSmallIntegers) {
  std::vector<double> v(1000);
  std::iota(v.begin(), v.end(), 1.0);
  EXPECT_EQ(pairwise_sum(v), 500500.0);
  EXPECT_EQ(pairwise_sum({}), 0.0);
}

TEST(EvaluateTest, PerfectOracleScoresExactlyOne) {
  std::mt19937_64 rng(4);
  std::vector<Frame> frames;
  for (int i = 0; i < 20; ++i) {
    Frame f = testing::random_frame(rng, {64, 48, 0, 6, 4}, "p" + std::to_string(i));
    for (const auto& g : f.ground_truths) {
      f.detections.push_back({LabelDist::one_hot(4, g.class_id), PBox::crisp(g.box), f.frame_id});
    }
    frames.push_back(std::move(f));
  }
  const auto r = evaluate(frames);
  EXPECT_GT(r.n_tp, 0u);
  EXPECT_EQ(r.pdq, 1.0);
  EXPECT_EQ(r.avg_spatial, 1.0);
  EXPECT_EQ(r.n_fp, 0u);
}

TEST(EvaluateTest, ThreadCountDoesNotChangeReport) {
  std::mt19937_64 rng(17);
  std::vector<Frame> frames;
  for (int i = 0; i < 40; ++i) frames.push_back(testing::random_frame(rng, {}, "t" + std::to_string(i)));
  EvalOptions one;
  EvalOptions many;
  many.threads = 4;
  EXPECT_EQ(evaluate(frames, one), evaluate(frames, many));
}

}  // namespace
}  // namespace pdq
