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
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "clinet/geometry.hpp"
#include "clinet/grid.hpp"
#include "clinet/vectormap.hpp"

namespace clinet {

struct LabelConfig {
  int h0 = 256;
  int w0 = 512;
  int h1 = 32;
  int w1 = 64;
  int s = 8;
  double max_depth_m = 60.0;
  int min_points_per_segment = 3;
  double min_pixel_spacing = 4.0;
  double resample_spacing_m = 0.5;
  double min_segment_length_m = 3.0;
  // Horizontal pre-filter radius around the ego position, applied before
  // projection.
  double horizon_radius_m = 250.0;
};

// Throws kInvariantViolation unless h0 = h1*s, w0 = w1*s and all thresholds
// are positive.
void ValidateLabelConfig(const LabelConfig& cfg);

struct Cell {
  int i = 0;  // row
  int j = 0;  // column

  friend auto operator<=>(const Cell&, const Cell&) = default;
};

struct KeyPoint {
  Cell cell;
  Vec2 offset = Vec2::Zero();  // (ox, oy) in [0,1]^2
  Vec2 pixel = Vec2::Zero();   // (x, y) in the h0 x w0 input frame
  double depth_m = 0.0;
  std::optional<Vec3> xyz_cam;  // absent for 2D-only decoded points
  std::string lane_id;
};

// One frame of key-points on the h1 x w1 grid, at most one per cell, kept in
// row-major cell order.
struct LabelGrid {
  LabelConfig config;
  std::string frame_id;
  std::string camera_id;
  std::int64_t timestamp_ns = 0;
  std::vector<KeyPoint> keypoints;

  std::size_t num_positive() const { return keypoints.size(); }
  std::size_t num_negative() const {
    return static_cast<std::size_t>(config.h1) * config.w1 - keypoints.size();
  }

  // Dense targets: F (h1 x w1 binary), O (h1 x w1 x 2), Z (h1 x w1).
  Grid ConfidenceTarget() const;
  Grid OffsetTarget() const;
  Grid DepthTarget() const;
};

// Sorts key-points row-major and checks the per-cell / bounds invariants.
void NormalizeKeyPoints(LabelGrid& grid);

struct ProjectedPoint {
  Vec2 pixel;
  double depth_m = 0.0;
  Vec3 xyz_cam = Vec3::Zero();
  std::string lane_id;
  long along_index = 0;  // index along the resampled source lane
};

// Greedy walk: keeps the first point, then each point at least
// min_pixel_spacing from the last kept one.
std::vector<ProjectedPoint> ThinPoints(std::span<const ProjectedPoint> points,
                                       double min_pixel_spacing);

// Cell j = floor(x/s), i = floor(y/s); collisions keep the nearest depth,
// then the smaller lane id, then the smaller along-lane index.
LabelGrid QuantizeToGrid(std::span<const ProjectedPoint> points,
                         const LabelConfig& cfg);

struct FrameInfo {
  std::string frame_id;
  std::string camera_id;
  std::int64_t timestamp_ns = 0;
};

// Full labeling pipeline for one camera frame. `camera` is the raw
// calibration; its resize/crop transform is folded in before projection.
LabelGrid LabelFrame(const VectorMap& map, const CameraModel& camera,
                     std::span<const SE3Pose> poses, const FrameInfo& frame,
                     const LabelConfig& cfg);

}  // namespace clinet
