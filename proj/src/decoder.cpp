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

#include "clinet/decoder.hpp"

#include <algorithm>
#include <cmath>

#include "clinet/error.hpp"

namespace clinet {

void ValidatePrediction(PredictionGrid& pred) {
  const int h1 = pred.config.h1;
  const int w1 = pred.config.w1;
  auto expect = [&](const Grid& g, int channels, const char* name) {
    if (g.rows() != h1 || g.cols() != w1 || g.channels() != channels) {
      Fail(ErrorCode::kShapeMismatch,
           std::string(name) + " tensor is " + std::to_string(g.rows()) + "x" +
               std::to_string(g.cols()) + "x" + std::to_string(g.channels()) +
               ", expected " + std::to_string(h1) + "x" + std::to_string(w1) +
               "x" + std::to_string(channels));
    }
  };
  expect(pred.conf, 1, "confidence");
  expect(pred.offset, 2, "offset");
  expect(pred.depth, 1, "depth");
  for (double& v : pred.conf.data()) v = std::isnan(v) ? 0.0 : std::clamp(v, 0.0, 1.0);
  for (double& v : pred.offset.data()) v = std::isnan(v) ? 0.0 : std::clamp(v, 0.0, 1.0);
}

std::vector<KeyPoint> Decode(const PredictionGrid& pred,
                             const CameraModel& camera,
                             const DecodeConfig& dcfg) {
  const LabelConfig& cfg = pred.config;
  const CameraModel cam = AdjustIntrinsics(camera);
  if (cam.width != cfg.w0 || cam.height != cfg.h0) {
    Fail(ErrorCode::kShapeMismatch,
         "camera image size " + std::to_string(cam.width) + "x" +
             std::to_string(cam.height) + " does not match prediction input " +
             std::to_string(cfg.w0) + "x" + std::to_string(cfg.h0));
  }
  if (pred.conf.rows() != cfg.h1 || pred.conf.cols() != cfg.w1 ||
      !pred.conf.SameShape(pred.depth) || pred.offset.rows() != cfg.h1 ||
      pred.offset.cols() != cfg.w1 || pred.offset.channels() != 2) {
    Fail(ErrorCode::kShapeMismatch, "prediction tensors disagree with grid");
  }

  const double s = cfg.s;
  // Largest representable coordinates strictly inside the half-open image.
  const double max_x = std::nextafter(static_cast<double>(cfg.w0), 0.0);
  const double max_y = std::nextafter(static_cast<double>(cfg.h0), 0.0);

  std::vector<KeyPoint> out;
  for (int i = 0; i < cfg.h1; ++i) {
    for (int j = 0; j < cfg.w1; ++j) {
      if (pred.conf.at(i, j) < dcfg.conf_threshold) continue;
      KeyPoint kp;
      kp.cell = {i, j};
      kp.offset = {pred.offset.at(i, j, 0), pred.offset.at(i, j, 1)};
      if (dcfg.legacy_offset_formula) {
        kp.pixel = {j + s * kp.offset.x(), i + s * kp.offset.y()};
      } else {
        kp.pixel = {(j + kp.offset.x()) * s, (i + kp.offset.y()) * s};
      }
      kp.pixel = {std::min(kp.pixel.x(), max_x), std::min(kp.pixel.y(), max_y)};
      kp.depth_m = pred.depth.at(i, j);
      if (kp.depth_m > 0.0) kp.xyz_cam = Unproject(cam, kp.pixel, kp.depth_m);
      out.push_back(std::move(kp));
    }
  }
  return out;
}

PredictionGrid PredictionFromLabel(const LabelGrid& label) {
  PredictionGrid pred;
  pred.config = label.config;
  pred.frame_id = label.frame_id;
  pred.camera_id = label.camera_id;
  pred.conf = label.ConfidenceTarget();
  pred.offset = label.OffsetTarget();
  pred.depth = label.DepthTarget();
  return pred;
}

}  // namespace clinet
