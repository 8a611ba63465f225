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

#include "clinet/autolabel.hpp"

#include <algorithm>
#include <cmath>
#include <tuple>

#include "clinet/error.hpp"

namespace clinet {

void ValidateLabelConfig(const LabelConfig& cfg) {
  if (cfg.h1 < 1 || cfg.w1 < 1 || cfg.s < 1) {
    Fail(ErrorCode::kInvariantViolation,
         "grid size and scale must be positive");
  }
  if (cfg.h0 != cfg.h1 * cfg.s || cfg.w0 != cfg.w1 * cfg.s) {
    Fail(ErrorCode::kInvariantViolation,
         "input size must equal grid size times s (h0=" +
             std::to_string(cfg.h0) + ", h1*s=" +
             std::to_string(cfg.h1 * cfg.s) + ", w0=" +
             std::to_string(cfg.w0) + ", w1*s=" +
             std::to_string(cfg.w1 * cfg.s) + ")");
  }
  if (!(cfg.max_depth_m > 0.0) || cfg.min_points_per_segment < 1 ||
      !(cfg.min_pixel_spacing > 0.0) || !(cfg.resample_spacing_m > 0.0) ||
      !(cfg.min_segment_length_m > 0.0) || !(cfg.horizon_radius_m > 0.0)) {
    Fail(ErrorCode::kInvariantViolation, "label thresholds must be positive");
  }
}

Grid LabelGrid::ConfidenceTarget() const {
  Grid f(config.h1, config.w1, 1);
  for (const KeyPoint& kp : keypoints) f.at(kp.cell.i, kp.cell.j) = 1.0;
  return f;
}

Grid LabelGrid::OffsetTarget() const {
  Grid o(config.h1, config.w1, 2);
  for (const KeyPoint& kp : keypoints) {
    o.at(kp.cell.i, kp.cell.j, 0) = kp.offset.x();
    o.at(kp.cell.i, kp.cell.j, 1) = kp.offset.y();
  }
  return o;
}

Grid LabelGrid::DepthTarget() const {
  Grid z(config.h1, config.w1, 1);
  for (const KeyPoint& kp : keypoints) z.at(kp.cell.i, kp.cell.j) = kp.depth_m;
  return z;
}

void NormalizeKeyPoints(LabelGrid& grid) {
  std::stable_sort(
      grid.keypoints.begin(), grid.keypoints.end(),
      [](const KeyPoint& a, const KeyPoint& b) { return a.cell < b.cell; });
  for (std::size_t k = 0; k < grid.keypoints.size(); ++k) {
    const KeyPoint& kp = grid.keypoints[k];
    if (kp.cell.i < 0 || kp.cell.i >= grid.config.h1 || kp.cell.j < 0 ||
        kp.cell.j >= grid.config.w1) {
      Fail(ErrorCode::kInvariantViolation,
           "keypoint cell (" + std::to_string(kp.cell.i) + "," +
               std::to_string(kp.cell.j) + ") outside the grid");
    }
    if (kp.offset.x() < 0.0 || kp.offset.x() > 1.0 || kp.offset.y() < 0.0 ||
        kp.offset.y() > 1.0) {
      Fail(ErrorCode::kInvariantViolation, "keypoint offset outside [0,1]");
    }
    if (k > 0 && grid.keypoints[k - 1].cell == kp.cell) {
      Fail(ErrorCode::kInvariantViolation,
           "two keypoints share cell (" + std::to_string(kp.cell.i) + "," +
               std::to_string(kp.cell.j) + ")");
    }
  }
}

std::vector<ProjectedPoint> ThinPoints(std::span<const ProjectedPoint> points,
                                       double min_pixel_spacing) {
  std::vector<ProjectedPoint> kept;
  for (const ProjectedPoint& pt : points) {
    if (kept.empty() ||
        (pt.pixel - kept.back().pixel).norm() >= min_pixel_spacing) {
      kept.push_back(pt);
    }
  }
  return kept;
}

LabelGrid QuantizeToGrid(std::span<const ProjectedPoint> points,
                         const LabelConfig& cfg) {
  const double s = cfg.s;
  std::vector<int> owner(static_cast<std::size_t>(cfg.h1) * cfg.w1, -1);
  auto better = [](const ProjectedPoint& a, const ProjectedPoint& b) {
    return std::tie(a.depth_m, a.lane_id, a.along_index) <
           std::tie(b.depth_m, b.lane_id, b.along_index);
  };
  for (std::size_t k = 0; k < points.size(); ++k) {
    const Vec2& px = points[k].pixel;
    if (!(px.x() >= 0.0 && px.x() < cfg.w0 && px.y() >= 0.0 &&
          px.y() < cfg.h0)) {
      Fail(ErrorCode::kPixelOutOfBounds,
           "pixel (" + std::to_string(px.x()) + ", " + std::to_string(px.y()) +
               ") outside [0," + std::to_string(cfg.w0) + ")x[0," +
               std::to_string(cfg.h0) + ")");
    }
    const int j = std::min(static_cast<int>(std::floor(px.x() / s)), cfg.w1 - 1);
    const int i = std::min(static_cast<int>(std::floor(px.y() / s)), cfg.h1 - 1);
    int& slot = owner[static_cast<std::size_t>(i) * cfg.w1 + j];
    if (slot < 0 || better(points[k], points[slot])) {
      slot = static_cast<int>(k);
    }
  }

  LabelGrid grid;
  grid.config = cfg;
  for (int i = 0; i < cfg.h1; ++i) {
    for (int j = 0; j < cfg.w1; ++j) {
      const int slot = owner[static_cast<std::size_t>(i) * cfg.w1 + j];
      if (slot < 0) continue;
      const ProjectedPoint& pt = points[slot];
      KeyPoint kp;
      kp.cell = {i, j};
      kp.offset = {std::clamp(pt.pixel.x() / s - j, 0.0, 1.0),
                   std::clamp(pt.pixel.y() / s - i, 0.0, 1.0)};
      kp.pixel = pt.pixel;
      kp.depth_m = pt.depth_m;
      kp.xyz_cam = pt.xyz_cam;
      kp.lane_id = pt.lane_id;
      grid.keypoints.push_back(std::move(kp));
    }
  }
  return grid;
}

namespace {

double RunLength(std::span<const ProjectedPoint> run,
                 std::span<const Vec3> city_points) {
  double total = 0.0;
  for (std::size_t k = 1; k < run.size(); ++k) {
    total += (city_points[run[k].along_index] -
              city_points[run[k - 1].along_index])
                 .norm();
  }
  return total;
}

}  // namespace

LabelGrid LabelFrame(const VectorMap& map, const CameraModel& camera,
                     std::span<const SE3Pose> poses, const FrameInfo& frame,
                     const LabelConfig& cfg) {
  ValidateLabelConfig(cfg);
  const CameraModel cam = AdjustIntrinsics(camera);
  if (cam.width != cfg.w0 || cam.height != cfg.h0) {
    Fail(ErrorCode::kConfigMismatch,
         "camera '" + frame.camera_id + "' adjusted image size " +
             std::to_string(cam.width) + "x" + std::to_string(cam.height) +
             " does not match label input size " + std::to_string(cfg.w0) +
             "x" + std::to_string(cfg.h0));
  }

  const SE3Pose ego = InterpolatePose(poses, frame.timestamp_ns);
  const SE3Pose city_to_cam = Invert(Compose(ego, camera.extrinsic));
  const Vec2 ego_xy = ego.t.head<2>();

  std::vector<ProjectedPoint> accepted;
  for (const Lane& lane : map.lanes()) {
    const Polyline3& line = lane.line;
    if (line.kind != LaneKind::kCenterline || line.is_intersection) continue;

    const Polyline3 dense = ResamplePolyline(line, cfg.resample_spacing_m);
    std::size_t cursor = 0;
    for (const Polyline3& run :
         ClipToHorizon(dense, ego_xy, cfg.horizon_radius_m)) {
      // Runs are ordered subsequences of `dense`; recover the source index.
      while (dense.points[cursor] != run.points.front()) ++cursor;

      // Visibility segments: maximal runs in front of the camera and inside
      // the image. The depth limit is applied within them below.
      std::vector<std::vector<ProjectedPoint>> segments(1);
      for (std::size_t k = 0; k < run.points.size(); ++k) {
        const long along = static_cast<long>(cursor + k);
        const Vec3 p_cam = TransformPoint(city_to_cam, run.points[k]);
        bool keep = p_cam.z() > 0.0;
        Vec2 px = Vec2::Zero();
        if (keep) {
          px = Project(cam, p_cam);
          keep = px.x() >= 0.0 && px.x() < cfg.w0 && px.y() >= 0.0 &&
                 px.y() < cfg.h0;
        }
        if (keep) {
          segments.back().push_back({px, p_cam.z(), p_cam, line.lane_id, along});
        } else if (!segments.back().empty()) {
          segments.emplace_back();
        }
      }
      cursor += run.points.size();

      for (std::vector<ProjectedPoint>& seg : segments) {
        if (seg.empty()) continue;
        // Thin outward from the camera over the whole visible segment, so
        // the depth limit never changes which points survive thinning.
        if (seg.back().depth_m < seg.front().depth_m) {
          std::reverse(seg.begin(), seg.end());
        }
        std::vector<char> thinned(seg.size(), 0);
        for (std::size_t k = 0, last = 0; k < seg.size(); ++k) {
          if (k == 0 || (seg[k].pixel - seg[last].pixel).norm() >=
                            cfg.min_pixel_spacing) {
            thinned[k] = 1;
            last = k;
          }
        }
        for (std::size_t a = 0; a < seg.size();) {
          if (seg[a].depth_m > cfg.max_depth_m) {
            ++a;
            continue;
          }
          std::size_t b = a;
          while (b < seg.size() && seg[b].depth_m <= cfg.max_depth_m) ++b;
          const std::span<const ProjectedPoint> near(seg.data() + a, b - a);
          if (near.size() >= static_cast<std::size_t>(cfg.min_points_per_segment) &&
              RunLength(near, dense.points) >= cfg.min_segment_length_m) {
            for (std::size_t k = a; k < b; ++k) {
              if (thinned[k]) accepted.push_back(seg[k]);
            }
          }
          a = b;
        }
      }
    }
  }

  LabelGrid grid = QuantizeToGrid(accepted, cfg);
  grid.frame_id = frame.frame_id;
  grid.camera_id = frame.camera_id;
  grid.timestamp_ns = frame.timestamp_ns;
  return grid;
}

}  // namespace clinet
