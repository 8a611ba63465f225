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
#include "clinet/codec.hpp"
#include "clinet/geometry.hpp"
#include "clinet/vectormap.hpp"

namespace clinet {

// xorshift64* seeded through splitmix64. Fixed algorithm so scenes are
// identical on every platform.
class XorShift64Star {
 public:
  explicit XorShift64Star(std::uint64_t seed);

  std::uint64_t Next();
  // Uniform in [0, 1) with 53 random bits.
  double Uniform();
  double Uniform(double lo, double hi) { return lo + (hi - lo) * Uniform(); }

 private:
  std::uint64_t state_;
};

enum class Layout { kStraight, kCurve, kGridWithIntersections };

// Throws kUnsupportedLayout for unknown names.
Layout ParseLayout(const std::string& name);
std::string LayoutName(Layout layout);

struct SceneSpec {
  std::uint64_t seed = 0;
  Layout layout = Layout::kStraight;
  double lane_width_m = 3.5;
  int num_lanes = 2;
  double trajectory_length_m = 130.0;
  double speed_mps = 10.0;
  double frame_rate_hz = 10.0;
  std::vector<CalibratedCamera> camera_rig;
};

// Raw 1024x512 sensors downscaled by 0.5 to a 512x256 network input, 1.6 m
// above ground. One camera looks straight ahead; three adds +-50 deg yaw.
std::vector<CalibratedCamera> DefaultCameraRig(int num_cameras);

struct Scene {
  VectorMap map;
  std::vector<SE3Pose> poses;
  Calibration calibration;
  std::vector<FrameInfo> frames;  // camera exposure times, within pose span
};

// Number of frames implied by length, speed and rate.
int SceneFrameCount(const SceneSpec& spec);

// The ego drives lane 0 at constant speed. Poses are sampled at
// frame_rate_hz; frames fall halfway between consecutive pose samples.
Scene GenerateScene(const SceneSpec& spec);

struct RgbImage {
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> pixels;  // row-major RGB

  const std::uint8_t* at(int x, int y) const {
    return &pixels[(static_cast<std::size_t>(y) * width + x) * 3];
  }
};

struct RasterStyle {
  double lane_width_m = 3.5;
  double near_m = 0.3;
  double far_m = 150.0;
};

inline constexpr std::uint8_t kSkyRgb[3] = {135, 190, 235};
inline constexpr std::uint8_t kGroundRgb[3] = {70, 95, 60};
inline constexpr std::uint8_t kRoadRgb[3] = {64, 64, 64};
inline constexpr std::uint8_t kLineRgb[3] = {255, 255, 255};

// Flat-shaded rendering: sky above the ground plane z = 0, dark road
// surface around centerlines, 2-pixel white boundary lines.
RgbImage RasterizeFrame(const VectorMap& map, const CameraModel& camera,
                        const SE3Pose& ego_pose, int width, int height,
                        const RasterStyle& style = {});

std::vector<std::uint8_t> EncodePng(const RgbImage& image);

}  // namespace clinet
