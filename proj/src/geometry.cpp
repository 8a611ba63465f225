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

#include "clinet/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "clinet/error.hpp"

namespace clinet {

void ValidatePose(const SE3Pose& pose) {
  if (pose.timestamp_ns < 0) {
    Fail(ErrorCode::kInvariantViolation,
         "pose timestamp must be non-negative, got " +
             std::to_string(pose.timestamp_ns));
  }
  if (!pose.t.allFinite() || !pose.q.coeffs().allFinite()) {
    Fail(ErrorCode::kInvariantViolation, "pose has non-finite values");
  }
  if (std::abs(pose.q.norm() - 1.0) > 1e-9) {
    Fail(ErrorCode::kInvariantViolation, "pose quaternion is not unit");
  }
}

void ValidateCamera(const CameraModel& camera) {
  if (!(camera.fx > 0.0) || !(camera.fy > 0.0)) {
    Fail(ErrorCode::kInvariantViolation, "focal lengths must be positive");
  }
  if (camera.width < 1 || camera.height < 1) {
    Fail(ErrorCode::kInvariantViolation, "image size must be at least 1x1");
  }
  if (!(camera.cx >= 0.0 && camera.cx < camera.width) ||
      !(camera.cy >= 0.0 && camera.cy < camera.height)) {
    Fail(ErrorCode::kInvariantViolation,
         "principal point must lie inside the image");
  }
  const ResizeCrop& tr = camera.transform;
  if (tr.crop_x0 < 0 || tr.crop_y0 < 0 || tr.crop_w < 1 || tr.crop_h < 1 ||
      tr.crop_x0 + tr.crop_w > camera.width ||
      tr.crop_y0 + tr.crop_h > camera.height) {
    Fail(ErrorCode::kInvariantViolation,
         "crop region must lie inside the source image");
  }
  if (!(tr.scale_x > 0.0) || !(tr.scale_y > 0.0)) {
    Fail(ErrorCode::kInvariantViolation, "resize scales must be positive");
  }
  ValidatePose(camera.extrinsic);
}

ResizeCrop IdentityTransform(const CameraModel& camera) {
  return ResizeCrop{0, 0, camera.width, camera.height, 1.0, 1.0};
}

Vec2 Project(const CameraModel& camera, const Vec3& p_cam) {
  if (!(p_cam.z() > 0.0)) {
    Fail(ErrorCode::kBehindCamera,
         "point is behind the camera (z = " + std::to_string(p_cam.z()) + ")");
  }
  return {camera.fx * p_cam.x() / p_cam.z() + camera.cx,
          camera.fy * p_cam.y() / p_cam.z() + camera.cy};
}

Vec3 Unproject(const CameraModel& camera, const Vec2& pixel, double depth_z) {
  if (!(depth_z > 0.0)) {
    Fail(ErrorCode::kNonPositiveDepth,
         "depth must be positive, got " + std::to_string(depth_z));
  }
  return {(pixel.x() - camera.cx) * depth_z / camera.fx,
          (pixel.y() - camera.cy) * depth_z / camera.fy, depth_z};
}

Vec2 ApplyResizeCrop(const ResizeCrop& transform, const Vec2& pixel) {
  return {(pixel.x() - transform.crop_x0) * transform.scale_x,
          (pixel.y() - transform.crop_y0) * transform.scale_y};
}

CameraModel AdjustIntrinsics(const CameraModel& camera) {
  ValidateCamera(camera);
  const ResizeCrop& tr = camera.transform;
  CameraModel out = camera;
  out.fx = camera.fx * tr.scale_x;
  out.fy = camera.fy * tr.scale_y;
  out.cx = (camera.cx - tr.crop_x0) * tr.scale_x;
  out.cy = (camera.cy - tr.crop_y0) * tr.scale_y;
  out.width = static_cast<int>(std::lround(tr.crop_w * tr.scale_x));
  out.height = static_cast<int>(std::lround(tr.crop_h * tr.scale_y));
  out.transform = ResizeCrop{0, 0, out.width, out.height, 1.0, 1.0};
  return out;
}

SE3Pose Compose(const SE3Pose& a, const SE3Pose& b) {
  SE3Pose out;
  out.timestamp_ns = a.timestamp_ns;
  out.q = (a.q * b.q).normalized();
  out.t = a.q * b.t + a.t;
  return out;
}

SE3Pose Invert(const SE3Pose& a) {
  SE3Pose out;
  out.timestamp_ns = a.timestamp_ns;
  out.q = a.q.conjugate();
  out.t = -(out.q * a.t);
  return out;
}

Vec3 TransformPoint(const SE3Pose& a, const Vec3& p) { return a.q * p + a.t; }

Quat Slerp(const Quat& a, const Quat& b, double alpha) {
  Eigen::Vector4d qa = a.coeffs();
  Eigen::Vector4d qb = b.coeffs();
  double dot = qa.dot(qb);
  if (dot < 0.0) {
    qb = -qb;
    dot = -dot;
  }
  Eigen::Vector4d mixed;
  if (dot > 1.0 - 1e-12) {
    mixed = (1.0 - alpha) * qa + alpha * qb;
  } else {
    const double theta = std::acos(std::min(dot, 1.0));
    const double sin_theta = std::sin(theta);
    mixed = (std::sin((1.0 - alpha) * theta) / sin_theta) * qa +
            (std::sin(alpha * theta) / sin_theta) * qb;
  }
  Quat out;
  out.coeffs() = mixed;
  return out.normalized();
}

SE3Pose InterpolatePose(std::span<const SE3Pose> track, std::int64_t t_ns) {
  if (track.empty()) {
    Fail(ErrorCode::kEmptyTrack, "pose track is empty");
  }
  for (std::size_t k = 1; k < track.size(); ++k) {
    if (track[k].timestamp_ns <= track[k - 1].timestamp_ns) {
      Fail(ErrorCode::kInvariantViolation,
           "pose timestamps must be strictly increasing (index " +
               std::to_string(k) + ")");
    }
  }
  if (t_ns < track.front().timestamp_ns || t_ns > track.back().timestamp_ns) {
    Fail(ErrorCode::kOutOfRange,
         "timestamp " + std::to_string(t_ns) + " outside pose track span [" +
             std::to_string(track.front().timestamp_ns) + ", " +
             std::to_string(track.back().timestamp_ns) + "]");
  }
  auto upper = std::upper_bound(
      track.begin(), track.end(), t_ns,
      [](std::int64_t t, const SE3Pose& p) { return t < p.timestamp_ns; });
  const SE3Pose& before = *(upper - 1);
  if (before.timestamp_ns == t_ns || upper == track.end()) {
    return before;
  }
  const SE3Pose& after = *upper;
  const double alpha = static_cast<double>(t_ns - before.timestamp_ns) /
                       static_cast<double>(after.timestamp_ns -
                                           before.timestamp_ns);
  SE3Pose out;
  out.timestamp_ns = t_ns;
  out.t = (1.0 - alpha) * before.t + alpha * after.t;
  out.q = Slerp(before.q, after.q, alpha);
  return out;
}

}  // namespace clinet
