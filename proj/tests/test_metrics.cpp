/* Copyright 2026 The clinet-bench Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "clinet/metrics.hpp"
#include "support/expect.hpp"
#include "support/oracles.hpp"

namespace clinet {
namespace {

using oracle::GridFromCells;

const std::vector<KeyPoint>& Kps(const LabelGrid& g) { return g.keypoints; }

TEST(F1, TableRows) {
  EXPECT_NEAR(F1FromPrecisionRecall(0.822, 0.585), 0.684, 5e-4);
  EXPECT_NEAR(F1FromPrecisionRecall(0.748, 0.512), 0.608, 5e-4);
  EXPECT_NEAR(F1FromPrecisionRecall(0.378, 0.229), 0.285, 5e-4);
}

TEST(F1, ZeroConventions) {
  const Scores s = F1FromCounts({0, 0, 0});
  EXPECT_EQ(s.precision, 0.0);
  EXPECT_EQ(s.recall, 0.0);
  EXPECT_EQ(s.f1, 0.0);
  EXPECT_EQ(F1FromCounts({0, 4, 0}).f1, 0.0);
  EXPECT_EQ(F1FromPrecisionRecall(0.0, 0.0), 0.0);
  const Scores t = F1FromCounts({3, 1, 2});
  EXPECT_DOUBLE_EQ(t.precision, 0.75);
  EXPECT_DOUBLE_EQ(t.recall, 0.6);
  EXPECT_DOUBLE_EQ(t.f1, 2 * 0.75 * 0.6 / 1.35);
}

TEST(Match, DiagonalNeighbour) {
  const LabelGrid gt = GridFromCells({{10, 10}}, 32, 64);
  const LabelGrid pred = GridFromCells({{11, 11}}, 32, 64);
  EXPECT_EQ(MatchFrame(gt, Kps(pred), 3).counts, (Counts{1, 0, 0}));
  EXPECT_EQ(MatchFrame(gt, Kps(pred), 1).counts, (Counts{0, 1, 1}));
  EXPECT_EQ(MatchFrame(gt, Kps(pred), 5).counts, (Counts{1, 0, 0}));
  const auto bf3 = oracle::BruteForceMatch({{10, 10}}, {{11, 11}}, 32, 64, 3);
  EXPECT_EQ((Counts{bf3.tp, bf3.fp, bf3.fn}), (Counts{1, 0, 0}));
  const auto bf1 = oracle::BruteForceMatch({{10, 10}}, {{11, 11}}, 32, 64, 1);
  EXPECT_EQ((Counts{bf1.tp, bf1.fp, bf1.fn}), (Counts{0, 1, 1}));
}

TEST(Match, PerfectAndEmptyPredictions) {
  oracle::Gen g(51);
  const auto cells = oracle::RandomCells(g, 32, 64, 0.1);
  const LabelGrid gt = GridFromCells(cells, 32, 64);
  for (int n : {1, 3, 5, 7}) {
    EXPECT_EQ(MatchFrame(gt, Kps(gt), n).counts,
              (Counts{static_cast<std::int64_t>(cells.size()), 0, 0}));
    EXPECT_EQ(MatchFrame(gt, {}, n).counts,
              (Counts{0, 0, static_cast<std::int64_t>(cells.size())}));
  }
}

TEST(Match, WindowClippedAtBorder) {
  const LabelGrid gt = GridFromCells({{0, 0}}, 4, 4);
  const LabelGrid pred = GridFromCells({{2, 2}, {3, 3}}, 4, 4);
  EXPECT_EQ(MatchFrame(gt, Kps(pred), 5).counts, (Counts{1, 1, 0}));
}

TEST(Match, OneWindowConsumesSeveralPredictions) {
  const LabelGrid gt = GridFromCells({{5, 5}}, 10, 10);
  const LabelGrid pred = GridFromCells({{4, 4}, {5, 6}, {6, 6}}, 10, 10);
  const FrameMatch m = MatchFrame(gt, Kps(pred), 3);
  EXPECT_EQ(m.counts, (Counts{1, 0, 0}));
  ASSERT_EQ(m.pairs.size(), 1u);
  EXPECT_EQ(pred.keypoints[m.pairs[0].pred_index].cell, (Cell{5, 6}));
}

TEST(Match, NearestPairTiesRowMajor) {
  const LabelGrid gt = GridFromCells({{5, 5}}, 10, 10);
  const LabelGrid pred = GridFromCells({{6, 5}, {5, 4}, {4, 5}}, 10, 10);
  const FrameMatch m = MatchFrame(gt, Kps(pred), 3);
  ASSERT_EQ(m.pairs.size(), 1u);
  EXPECT_EQ(pred.keypoints[m.pairs[0].pred_index].cell, (Cell{4, 5}));
}

TEST(Match, Errors) {
  const LabelGrid gt = GridFromCells({{1, 1}}, 4, 4);
  const LabelGrid pred = GridFromCells({{5, 1}}, 8, 4);
  ExpectCode(ErrorCode::kGridMismatch, [&] { MatchFrame(gt, Kps(pred), 3); });
  ExpectCode(ErrorCode::kGridMismatch, [&] { EvaluateFrame(gt, pred, EvalConfig{}); });
  const LabelGrid ok = GridFromCells({{1, 1}}, 4, 4);
  ExpectCode(ErrorCode::kInvalidArgument, [&] { MatchFrame(gt, Kps(ok), 4); });
  ExpectCode(ErrorCode::kInvalidArgument, [&] { MatchFrame(gt, Kps(ok), 0); });
}

TEST(MatchProperty, EqualsBruteForce) {
  oracle::Gen g(52);
  for (int trial = 0; trial < 600; ++trial) {
    const int h = g.Int(1, 64), w = g.Int(1, 64);
    const auto gc = oracle::RandomCells(g, h, w, g.Uniform(0, 0.3));
    const auto pc = oracle::RandomCells(g, h, w, g.Uniform(0, 0.3));
    LabelGrid gt = GridFromCells(gc, h, w);
    LabelGrid pred = GridFromCells(pc, h, w);
    std::shuffle(pred.keypoints.begin(), pred.keypoints.end(), g.engine());
    std::shuffle(gt.keypoints.begin(), gt.keypoints.end(), g.engine());
    for (int n : {1, 3, 5}) {
      const FrameMatch m = MatchFrame(gt, Kps(pred), n);
      const auto bf = oracle::BruteForceMatch(gc, pc, h, w, n);
      ASSERT_EQ(m.counts, (Counts{bf.tp, bf.fp, bf.fn})) << h << "x" << w << " n=" << n;
      ASSERT_EQ(m.pairs.size(), bf.pairs.size());
      for (std::size_t k = 0; k < m.pairs.size(); ++k) {
        EXPECT_EQ(gt.keypoints[m.pairs[k].gt_index].cell, bf.pairs[k].first);
        EXPECT_EQ(pred.keypoints[m.pairs[k].pred_index].cell, bf.pairs[k].second);
      }
      EXPECT_EQ(m.counts.tp + m.counts.fn, static_cast<std::int64_t>(gc.size()));
      EXPECT_LE(m.counts.fp, static_cast<std::int64_t>(pc.size()));
    }
  }
}

TEST(MatchProperty, WindowMonotonicity) {
  oracle::Gen g(53);
  for (int trial = 0; trial < 200; ++trial) {
    const LabelGrid gt = GridFromCells(oracle::RandomCells(g, 32, 64, 0.08), 32, 64);
    const LabelGrid pred = GridFromCells(oracle::RandomCells(g, 32, 64, 0.08), 32, 64);
    const auto t5 = MatchFrame(gt, Kps(pred), 5).counts.tp;
    const auto t3 = MatchFrame(gt, Kps(pred), 3).counts.tp;
    const auto t1 = MatchFrame(gt, Kps(pred), 1).counts.tp;
    EXPECT_GE(t5, t3);
    EXPECT_GE(t3, t1);
  }
}

TEST(MatchProperty, WindowDisjointFalsePositives) {
  oracle::Gen g(54);
  for (int trial = 0; trial < 200; ++trial) {
    const auto gc = oracle::RandomCells(g, 32, 64, 0.03);
    auto pc = oracle::RandomCells(g, 32, 64, 0.03);
    const LabelGrid gt = GridFromCells(gc, 32, 64);
    for (int n : {1, 3, 5}) {
      const int r = n / 2;
      const Counts before = MatchFrame(gt, Kps(GridFromCells(pc, 32, 64)), n).counts;
      std::vector<Cell> extra = pc;
      int k = 0;
      for (int attempt = 0; attempt < 200 && k < 5; ++attempt) {
        const Cell c{g.Int(0, 31), g.Int(0, 63)};
        const bool near_gt = std::any_of(gc.begin(), gc.end(), [&](const Cell& q) {
          return std::abs(q.i - c.i) <= r && std::abs(q.j - c.j) <= r;
        });
        if (near_gt || std::find(extra.begin(), extra.end(), c) != extra.end()) continue;
        extra.push_back(c);
        ++k;
      }
      const Counts after = MatchFrame(gt, Kps(GridFromCells(extra, 32, 64)), n).counts;
      EXPECT_EQ(after.tp, before.tp);
      EXPECT_EQ(after.fn, before.fn);
      EXPECT_EQ(after.fp, before.fp + k);
      EXPECT_EQ(F1FromCounts(after).precision,
                after.tp + after.fp > 0
                    ? static_cast<double>(before.tp) / (before.tp + before.fp + k)
                    : 0.0);
    }
  }
}

TEST(DepthError, Examples) {
  LabelGrid gt = GridFromCells({{3, 3}}, 8, 8);
  LabelGrid pred = gt;
  EXPECT_EQ(DepthErrorFrame(gt, Kps(pred), 3), std::vector<double>{0.0});
  pred.keypoints[0].depth_m = 11.0;
  const auto e = DepthErrorFrame(gt, Kps(pred), 3);
  ASSERT_EQ(e.size(), 1u);
  EXPECT_DOUBLE_EQ(e[0], 0.1);
  // 2D-only predictions contribute nothing.
  pred.keypoints[0].xyz_cam.reset();
  EXPECT_TRUE(DepthErrorFrame(gt, Kps(pred), 3).empty());
  // Normalization uses the full 3D distance.
  gt.keypoints[0].xyz_cam = Vec3(6, 0, 8);
  gt.keypoints[0].depth_m = 8.0;
  pred = gt;
  pred.keypoints[0].depth_m = 9.0;
  EXPECT_DOUBLE_EQ(DepthErrorFrame(gt, Kps(pred), 1)[0], 0.1);
}

FrameResult ResultWithCounts(const Counts& c, std::vector<double> errors = {}) {
  FrameResult f;
  f.window_sizes = {5, 3, 1};
  f.counts = {c, c, c};
  f.depth_errors = std::move(errors);
  f.gt_keypoints = c.tp + c.fn;
  return f;
}

TEST(Aggregate, PooledCounts) {
  const std::vector<FrameResult> frames = {ResultWithCounts({1, 1, 0}, {0.1}),
                                           ResultWithCounts({0, 1, 1}, {0.3})};
  const EvalReport r = Aggregate(frames, EvalConfig{});
  ASSERT_EQ(r.windows.size(), 3u);
  EXPECT_EQ(r.windows[0].n, 5);
  // Pooled (1,2,1): P = 1/3, R = 1/2, F1 = 2/5.
  EXPECT_EQ(r.windows[0].counts, (Counts{1, 2, 1}));
  EXPECT_DOUBLE_EQ(r.windows[0].scores.precision, 1.0 / 3.0);
  EXPECT_DOUBLE_EQ(r.windows[0].scores.recall, 0.5);
  EXPECT_DOUBLE_EQ(r.windows[0].scores.f1, 0.4);
  EXPECT_DOUBLE_EQ(r.avg_depth_error, 0.2);
  EXPECT_EQ(r.frames, 2);
  EXPECT_EQ(r.keypoints, 2);

  const std::vector<FrameResult> balanced = {ResultWithCounts({1, 1, 0}),
                                             ResultWithCounts({0, 0, 1})};
  const EvalReport b = Aggregate(balanced, EvalConfig{});
  EXPECT_DOUBLE_EQ(b.windows[2].scores.precision, 0.5);
  EXPECT_DOUBLE_EQ(b.windows[2].scores.recall, 0.5);
  EXPECT_DOUBLE_EQ(b.windows[2].scores.f1, 0.5);
}

TEST(Aggregate, PerFrameAverage) {
  const std::vector<FrameResult> frames = {ResultWithCounts({1, 1, 0}),
                                           ResultWithCounts({0, 1, 1})};
  EvalConfig cfg;
  cfg.averaging = Averaging::kPerFrame;
  const EvalReport r = Aggregate(frames, cfg);
  EXPECT_DOUBLE_EQ(r.windows[0].scores.precision, 0.25);
  EXPECT_DOUBLE_EQ(r.windows[0].scores.recall, 0.5);
  EXPECT_NEAR(r.windows[0].scores.f1, (2 * 0.5 * 1.0 / 1.5) / 2, 1e-15);
}

TEST(Aggregate, SingleAndRepeatedFrames) {
  const FrameResult f = ResultWithCounts({7, 2, 3}, {0.5});
  const EvalReport one = Aggregate(std::vector<FrameResult>{f}, EvalConfig{});
  const Scores direct = F1FromCounts({7, 2, 3});
  EXPECT_EQ(one.windows[1].scores.f1, direct.f1);
  const EvalReport two = Aggregate(std::vector<FrameResult>{f, f}, EvalConfig{});
  EXPECT_EQ(two.windows[1].counts, (Counts{14, 4, 6}));
  EXPECT_DOUBLE_EQ(two.windows[1].scores.precision, direct.precision);
  EXPECT_DOUBLE_EQ(two.windows[1].scores.f1, direct.f1);
  EXPECT_EQ(Aggregate(std::vector<FrameResult>{}, EvalConfig{}).windows[0].scores.f1, 0.0);
}

TEST(AggregateProperty, OrderIndependent) {
  oracle::Gen g(55);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<FrameResult> frames;
    for (int k = 0; k < g.Int(1, 20); ++k) {
      std::vector<double> errors;
      for (int e = 0; e < g.Int(0, 5); ++e) errors.push_back(g.Uniform(0, 1));
      frames.push_back(ResultWithCounts({g.Int(0, 9), g.Int(0, 9), g.Int(0, 9)}, errors));
    }
    for (Averaging avg : {Averaging::kPooled, Averaging::kPerFrame}) {
      EvalConfig cfg;
      cfg.averaging = avg;
      const EvalReport a = Aggregate(frames, cfg);
      std::vector<FrameResult> shuffled = frames;
      std::shuffle(shuffled.begin(), shuffled.end(), g.engine());
      const EvalReport b = Aggregate(shuffled, cfg);
      EXPECT_EQ(a.avg_depth_error, b.avg_depth_error);
      for (std::size_t w = 0; w < a.windows.size(); ++w) {
        EXPECT_EQ(a.windows[w].counts, b.windows[w].counts);
        EXPECT_EQ(a.windows[w].scores.f1, b.windows[w].scores.f1);
        EXPECT_EQ(a.windows[w].scores.precision, b.windows[w].scores.precision);
      }
    }
  }
}

TEST(EvaluateFrame, SelfEvaluationIsPerfect) {
  oracle::Gen g(56);
  LabelGrid gt = GridFromCells(oracle::RandomCells(g, 32, 64, 0.1), 32, 64);
  for (KeyPoint& kp : gt.keypoints) {
    kp.depth_m = g.Uniform(1, 60);
    kp.xyz_cam = Vec3(g.Uniform(-5, 5), g.Uniform(-2, 2), kp.depth_m);
  }
  const FrameResult f = EvaluateFrame(gt, gt, EvalConfig{});
  const EvalReport r = Aggregate(std::vector<FrameResult>{f}, EvalConfig{});
  for (const WindowReport& w : r.windows) {
    EXPECT_EQ(w.scores.precision, 1.0);
    EXPECT_EQ(w.scores.recall, 1.0);
    EXPECT_EQ(w.scores.f1, 1.0);
  }
  EXPECT_EQ(r.avg_depth_error, 0.0);
  EXPECT_EQ(f.depth_errors.size(), gt.keypoints.size());
}

TEST(EvalConfig, Validation) {
  EvalConfig cfg;
  EXPECT_NO_THROW(ValidateEvalConfig(cfg));
  cfg.window_sizes = {};
  ExpectCode(ErrorCode::kInvalidArgument, [&] { ValidateEvalConfig(cfg); });
  cfg.window_sizes = {2};
  ExpectCode(ErrorCode::kInvalidArgument, [&] { ValidateEvalConfig(cfg); });
  cfg.window_sizes = {3};
  cfg.frame_stride = 0;
  ExpectCode(ErrorCode::kInvalidArgument, [&] { ValidateEvalConfig(cfg); });
}

}  // namespace
}  // namespace clinet
