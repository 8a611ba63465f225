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

#include "clinet/grid.hpp"

namespace clinet {

struct LossConfig {
  double gamma = 1.0;
};

struct LossParts {
  double conf = 0.0;
  double offset = 0.0;
  double depth = 0.0;
};

// Sums over an empty class (no positive or no negative cells) contribute 0.
//
// conf:   (1/Ne) sum_{F=1} (1 - F^)^2 + (1/Nd) sum_{F=0} F^^2
// offset: (1/Ne) sum_{F=1} (Ox - O^x)^2 + (Oy - O^y)^2
// depth:  (1/Ne) sum_{F=1} (Z - Z^)^2
//
// `mask` is the binary confidence target F (h1 x w1); offset grids are
// h1 x w1 x 2. Shape disagreements throw kShapeMismatch.
double ConfLoss(const Grid& mask, const Grid& conf_pred);
double OffsetLoss(const Grid& mask, const Grid& offset_gt,
                  const Grid& offset_pred);
double DepthLoss(const Grid& mask, const Grid& depth_gt, const Grid& depth_pred);

// L = conf + offset + gamma * depth.
double TotalLoss(const LossParts& parts, const LossConfig& cfg);

// Closed-form gradients with respect to the prediction grid.
Grid ConfLossGrad(const Grid& mask, const Grid& conf_pred);
Grid OffsetLossGrad(const Grid& mask, const Grid& offset_gt,
                    const Grid& offset_pred);
Grid DepthLossGrad(const Grid& mask, const Grid& depth_gt,
                   const Grid& depth_pred);

}  // namespace clinet
