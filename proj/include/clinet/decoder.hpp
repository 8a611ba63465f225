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

#include <string>
#include <vector>

#include "clinet/autolabel.hpp"
#include "clinet/geometry.hpp"
#include "clinet/grid.hpp"

namespace clinet {

// Model output for one frame: confidence (h1 x w1), offsets (h1 x w1 x 2)
// and depth (h1 x w1). Only h1, w1 and s of `config` are meaningful.
struct PredictionGrid {
  LabelConfig config;
  std::string frame_id;
  std::string camera_id;
  Grid conf;
  Grid offset;
  Grid depth;
};

// Checks tensor shapes against config and clamps confidence / offsets into
// [0, 1]. Throws kShapeMismatch.
void ValidatePrediction(PredictionGrid& pred);

struct DecodeConfig {
  double conf_threshold = 0.5;
  // Literal per-cell form x = j + s*ox (not an inverse of quantization);
  // kept only for comparison runs.
  bool legacy_offset_formula = false;
};

// Emits one key-point per cell with conf >= threshold: pixel = (j + ox,
// i + oy) * s and xyz_cam = unproject(pixel, depth). Cells with depth <= 0
// produce 2D-only key-points. `camera` is the raw calibration entry.
std::vector<KeyPoint> Decode(const PredictionGrid& pred,
                             const CameraModel& camera,
                             const DecodeConfig& dcfg);

// Dense prediction equal to the label's own targets (conf 1 on key-point
// cells, 0 elsewhere).
PredictionGrid PredictionFromLabel(const LabelGrid& label);

}  // namespace clinet
