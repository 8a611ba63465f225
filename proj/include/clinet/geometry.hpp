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

#include <Eigen/Core>
#include <Eigen/Geometry>

namespace clinet {

using Vec2 = Eigen::Vector2d;
using Vec3 = Eigen::Vector3d;
using Quat = Eigen::Quaterniond;

// Rigid transform of a local frame expressed in its parent frame:
// p_parent = q * p_local + t.
struct SE3Pose {
  std::int64_t timestamp_ns = 0;
  Vec3 t = Vec3::Zero();
  Quat q = Quat::Identity();

  static SE3Pose Identity() { return {}; }
};

// Crop is applied in source pixels first, then the cropped region is scaled.
struct ResizeCrop {
  int crop_x0 = 0;
  int crop_y0 = 0;
  int crop_w = 0;
  int crop_h = 0;
  double scale_x = 1.0;
  double scale_y = 1.0;
};

// Pinhole camera. Camera frame: +z along the optical axis, +x right, +y down.
struct CameraModel {
  double fx = 1.0;
  double fy = 1.0;
  double cx = 0.0;
  double cy = 0.0;
  int width = 1;
  int height = 1;
  SE3Pose extrinsic;  // camera in ego frame; timestamp unused
  ResizeCrop transform;
};

// Throws kInvariantViolation when the quaternion is not unit or the
// timestamp is negative.
void ValidatePose(const SE3Pose& pose);
void ValidateCamera(const CameraModel& camera);

// Returns a ResizeCrop that leaves the camera unchanged.
ResizeCrop IdentityTransform(const CameraModel& camera);

Vec2 Project(const CameraModel& camera, const Vec3& p_cam);
Vec3 Unproject(const CameraModel& camera, const Vec2& pixel, double depth_z);

// Folds camera.transform into the intrinsics and image size. The returned
// camera carries an identity transform.
CameraModel AdjustIntrinsics(const CameraModel& camera);

// Maps a pixel in the source image through crop-then-scale.
Vec2 ApplyResizeCrop(const ResizeCrop& transform, const Vec2& pixel);

SE3Pose Compose(const SE3Pose& a, const SE3Pose& b);
SE3Pose Invert(const SE3Pose& a);
Vec3 TransformPoint(const SE3Pose& a, const Vec3& p);

// Shortest-arc spherical interpolation, alpha in [0, 1].
Quat Slerp(const Quat& a, const Quat& b, double alpha);

// Linear translation / SLERP rotation between the two samples bracketing
// t_ns. The track must be non-empty with strictly increasing timestamps.
SE3Pose InterpolatePose(std::span<const SE3Pose> track, std::int64_t t_ns);

}  // namespace clinet
