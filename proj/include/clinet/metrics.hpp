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

#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "clinet/autolabel.hpp"

namespace clinet {

enum class Averaging {
  kPooled,    // sum counts over frames, then compute ratios
  kPerFrame,  // mean of per-frame ratios
};

struct EvalConfig {
  std::vector<int> window_sizes = {5, 3, 1};
  int frame_stride = 10;
  Averaging averaging = Averaging::kPooled;
};

void ValidateEvalConfig(const EvalConfig& cfg);

struct Counts {
  std::int64_t tp = 0;
  std::int64_t fp = 0;
  std::int64_t fn = 0;

  Counts& operator+=(const Counts& o) {
    tp += o.tp;
    fp += o.fp;
    fn += o.fn;
    return *this;
  }
  friend bool operator==(const Counts&, const Counts&) = default;
};

struct Scores {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
};

// Zero denominators yield 0.
Scores F1FromCounts(const Counts& c);
double F1FromPrecisionRecall(double precision, double recall);

struct MatchPair {
  std::size_t gt_index = 0;
  std::size_t pred_index = 0;
};

struct FrameMatch {
  Counts counts;
  std::vector<MatchPair> pairs;
};

// Windowed occupancy matching. Ground truth is visited in row-major cell
// order. A key-point whose n x n window (clipped to the grid) holds no
// predicted cell is a false negative; otherwise it is a true positive and
// the window is zeroed in a second copy of the grid, whose surviving cells
// are the false positives. Each hit is paired with the nearest predicted
// cell in its window, ties broken row-major.
FrameMatch MatchFrame(const LabelGrid& gt, std::span<const KeyPoint> pred,
                      int window_n);

// |Z_gt - Z_pred| / |xyz_gt| for every matched pair with usable depths.
std::vector<double> DepthErrorFrame(const LabelGrid& gt,
                                    std::span<const KeyPoint> pred,
                                    int window_n);

struct FrameResult {
  std::string frame_id;
  std::string camera_id;
  std::vector<int> window_sizes;
  std::vector<Counts> counts;  // parallel to window_sizes
  std::vector<double> depth_errors;  // at window_sizes.front()
  std::int64_t gt_keypoints = 0;
};

FrameResult EvaluateFrame(const LabelGrid& gt, std::span<const KeyPoint> pred,
                          const EvalConfig& cfg);
// Same, after checking both grids share h1 x w1 (kGridMismatch otherwise).
FrameResult EvaluateFrame(const LabelGrid& gt, const LabelGrid& pred,
                          const EvalConfig& cfg);

struct WindowReport {
  int n = 0;
  Counts counts;
  Scores scores;
};

struct EvalReport {
  std::vector<WindowReport> windows;
  double avg_depth_error = 0.0;
  std::int64_t frames = 0;
  std::int64_t keypoints = 0;
};

// Order-independent fold over per-frame results.
EvalReport Aggregate(std::span<const FrameResult> frames,
                     const EvalConfig& cfg);

}  // namespace clinet
