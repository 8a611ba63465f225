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

#include "clinet/metrics.hpp"

#include <algorithm>
#include <cmath>

#include "clinet/error.hpp"

namespace clinet {

void ValidateEvalConfig(const EvalConfig& cfg) {
  if (cfg.window_sizes.empty()) {
    Fail(ErrorCode::kInvalidArgument, "at least one window size is required");
  }
  for (int n : cfg.window_sizes) {
    if (n < 1 || n % 2 == 0) {
      Fail(ErrorCode::kInvalidArgument,
           "window sizes must be odd and >= 1, got " + std::to_string(n));
    }
  }
  if (cfg.frame_stride < 1) {
    Fail(ErrorCode::kInvalidArgument, "frame stride must be >= 1");
  }
}

double F1FromPrecisionRecall(double precision, double recall) {
  const double denom = precision + recall;
  return denom > 0.0 ? 2.0 * precision * recall / denom : 0.0;
}

Scores F1FromCounts(const Counts& c) {
  Scores s;
  if (c.tp + c.fp > 0) s.precision = static_cast<double>(c.tp) / (c.tp + c.fp);
  if (c.tp + c.fn > 0) s.recall = static_cast<double>(c.tp) / (c.tp + c.fn);
  s.f1 = F1FromPrecisionRecall(s.precision, s.recall);
  return s;
}

FrameMatch MatchFrame(const LabelGrid& gt, std::span<const KeyPoint> pred,
                      int window_n) {
  if (window_n < 1 || window_n % 2 == 0) {
    Fail(ErrorCode::kInvalidArgument,
         "window size must be odd and >= 1, got " + std::to_string(window_n));
  }
  const int h1 = gt.config.h1;
  const int w1 = gt.config.w1;
  // Occupancy stores 1 + the index of the first prediction in each cell.
  std::vector<std::size_t> occupancy(static_cast<std::size_t>(h1) * w1, 0);
  for (std::size_t k = 0; k < pred.size(); ++k) {
    const Cell& c = pred[k].cell;
    if (c.i < 0 || c.i >= h1 || c.j < 0 || c.j >= w1) {
      Fail(ErrorCode::kGridMismatch,
           "predicted cell (" + std::to_string(c.i) + "," +
               std::to_string(c.j) + ") outside the " + std::to_string(h1) +
               "x" + std::to_string(w1) + " ground-truth grid");
    }
    std::size_t& slot = occupancy[static_cast<std::size_t>(c.i) * w1 + c.j];
    if (slot == 0) slot = k + 1;
  }

  std::vector<std::size_t> order(gt.keypoints.size());
  for (std::size_t k = 0; k < order.size(); ++k) order[k] = k;
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return gt.keypoints[a].cell < gt.keypoints[b].cell;
  });

  // Hits are found in the original occupancy; zeroing only affects the copy
  // that is counted for false positives.
  std::vector<char> remaining(occupancy.size());
  for (std::size_t k = 0; k < occupancy.size(); ++k) remaining[k] = occupancy[k] != 0;

  const int r = window_n / 2;
  FrameMatch result;
  for (std::size_t g : order) {
    const Cell& c = gt.keypoints[g].cell;
    const int i0 = std::max(c.i - r, 0), i1 = std::min(c.i + r, h1 - 1);
    const int j0 = std::max(c.j - r, 0), j1 = std::min(c.j + r, w1 - 1);
    std::size_t best = 0;
    int best_d2 = 0;
    for (int i = i0; i <= i1; ++i) {
      for (int j = j0; j <= j1; ++j) {
        const std::size_t slot = occupancy[static_cast<std::size_t>(i) * w1 + j];
        if (slot == 0) continue;
        const int d2 = (i - c.i) * (i - c.i) + (j - c.j) * (j - c.j);
        if (best == 0 || d2 < best_d2) {
          best = slot;
          best_d2 = d2;
        }
      }
    }
    if (best == 0) {
      ++result.counts.fn;
      continue;
    }
    ++result.counts.tp;
    result.pairs.push_back({g, best - 1});
    for (int i = i0; i <= i1; ++i) {
      std::fill_n(remaining.begin() + static_cast<std::ptrdiff_t>(i) * w1 + j0,
                  j1 - j0 + 1, 0);
    }
  }
  result.counts.fp = std::count(remaining.begin(), remaining.end(), 1);
  return result;
}

namespace {

std::vector<double> DepthErrors(const LabelGrid& gt,
                                std::span<const KeyPoint> pred,
                                const FrameMatch& match) {
  std::vector<double> errors;
  for (const MatchPair& pair : match.pairs) {
    const KeyPoint& g = gt.keypoints[pair.gt_index];
    const KeyPoint& p = pred[pair.pred_index];
    if (!g.xyz_cam || !p.xyz_cam) continue;
    const double dist = g.xyz_cam->norm();
    if (!(dist > 0.0)) continue;
    errors.push_back(std::abs(g.depth_m - p.depth_m) / dist);
  }
  return errors;
}

}  // namespace

std::vector<double> DepthErrorFrame(const LabelGrid& gt,
                                    std::span<const KeyPoint> pred,
                                    int window_n) {
  return DepthErrors(gt, pred, MatchFrame(gt, pred, window_n));
}

FrameResult EvaluateFrame(const LabelGrid& gt, std::span<const KeyPoint> pred,
                          const EvalConfig& cfg) {
  ValidateEvalConfig(cfg);
  FrameResult out;
  out.frame_id = gt.frame_id;
  out.camera_id = gt.camera_id;
  out.window_sizes = cfg.window_sizes;
  out.gt_keypoints = static_cast<std::int64_t>(gt.keypoints.size());
  for (std::size_t w = 0; w < cfg.window_sizes.size(); ++w) {
    FrameMatch match = MatchFrame(gt, pred, cfg.window_sizes[w]);
    out.counts.push_back(match.counts);
    if (w == 0) out.depth_errors = DepthErrors(gt, pred, match);
  }
  return out;
}

FrameResult EvaluateFrame(const LabelGrid& gt, const LabelGrid& pred,
                          const EvalConfig& cfg) {
  if (gt.config.h1 != pred.config.h1 || gt.config.w1 != pred.config.w1) {
    Fail(ErrorCode::kGridMismatch,
         "frame '" + gt.frame_id + "': ground-truth grid " +
             std::to_string(gt.config.h1) + "x" + std::to_string(gt.config.w1) +
             " vs prediction grid " + std::to_string(pred.config.h1) + "x" +
             std::to_string(pred.config.w1));
  }
  return EvaluateFrame(gt, std::span<const KeyPoint>(pred.keypoints), cfg);
}

namespace {

double SortedMean(std::vector<double> values) {
  if (values.empty()) return 0.0;
  std::sort(values.begin(), values.end());
  double sum = 0.0;
  for (double v : values) sum += v;
  return sum / static_cast<double>(values.size());
}

}  // namespace

EvalReport Aggregate(std::span<const FrameResult> frames,
                     const EvalConfig& cfg) {
  ValidateEvalConfig(cfg);
  EvalReport report;
  report.frames = static_cast<std::int64_t>(frames.size());
  std::vector<double> depth_errors;
  for (const FrameResult& f : frames) {
    if (f.window_sizes != cfg.window_sizes) {
      Fail(ErrorCode::kInvalidArgument,
           "frame '" + f.frame_id + "' was evaluated with different windows");
    }
    report.keypoints += f.gt_keypoints;
    depth_errors.insert(depth_errors.end(), f.depth_errors.begin(),
                        f.depth_errors.end());
  }
  for (std::size_t w = 0; w < cfg.window_sizes.size(); ++w) {
    WindowReport wr;
    wr.n = cfg.window_sizes[w];
    std::vector<double> precision, recall, f1;
    for (const FrameResult& f : frames) {
      wr.counts += f.counts[w];
      const Scores s = F1FromCounts(f.counts[w]);
      precision.push_back(s.precision);
      recall.push_back(s.recall);
      f1.push_back(s.f1);
    }
    if (cfg.averaging == Averaging::kPooled) {
      wr.scores = F1FromCounts(wr.counts);
    } else {
      wr.scores = {SortedMean(precision), SortedMean(recall), SortedMean(f1)};
    }
    report.windows.push_back(wr);
  }
  report.avg_depth_error = SortedMean(std::move(depth_errors));
  return report;
}

}  // namespace clinet
