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

#include "clinet/losses.hpp"

#include <string>

#include "clinet/error.hpp"

namespace clinet {
namespace {

void CheckMask(const Grid& mask) {
  if (mask.channels() != 1) {
    Fail(ErrorCode::kShapeMismatch, "confidence mask must have one channel");
  }
  for (double v : mask.data()) {
    if (v != 0.0 && v != 1.0) {
      Fail(ErrorCode::kInvalidArgument, "confidence mask must be binary");
    }
  }
}

void CheckSpatial(const Grid& mask, const Grid& g, int channels,
                  const char* name) {
  if (g.rows() != mask.rows() || g.cols() != mask.cols() ||
      g.channels() != channels) {
    Fail(ErrorCode::kShapeMismatch,
         std::string(name) + " is " + std::to_string(g.rows()) + "x" +
             std::to_string(g.cols()) + "x" + std::to_string(g.channels()) +
             ", expected " + std::to_string(mask.rows()) + "x" +
             std::to_string(mask.cols()) + "x" + std::to_string(channels));
  }
}

struct ClassCounts {
  double positive = 0.0;
  double negative = 0.0;
};

ClassCounts CountClasses(const Grid& mask) {
  ClassCounts c;
  for (double v : mask.data()) (v == 1.0 ? c.positive : c.negative) += 1.0;
  return c;
}

double SafeInverse(double n) { return n > 0.0 ? 1.0 / n : 0.0; }

}  // namespace

double ConfLoss(const Grid& mask, const Grid& conf_pred) {
  CheckMask(mask);
  CheckSpatial(mask, conf_pred, 1, "confidence prediction");
  double pos = 0.0, neg = 0.0;
  for (std::size_t k = 0; k < mask.size(); ++k) {
    const double p = conf_pred.data()[k];
    if (mask.data()[k] == 1.0) {
      pos += (1.0 - p) * (1.0 - p);
    } else {
      neg += p * p;
    }
  }
  const ClassCounts n = CountClasses(mask);
  return pos * SafeInverse(n.positive) + neg * SafeInverse(n.negative);
}

double OffsetLoss(const Grid& mask, const Grid& offset_gt,
                  const Grid& offset_pred) {
  CheckMask(mask);
  CheckSpatial(mask, offset_gt, 2, "offset target");
  CheckSpatial(mask, offset_pred, 2, "offset prediction");
  double sum = 0.0;
  for (int i = 0; i < mask.rows(); ++i) {
    for (int j = 0; j < mask.cols(); ++j) {
      if (mask.at(i, j) != 1.0) continue;
      for (int c = 0; c < 2; ++c) {
        const double d = offset_gt.at(i, j, c) - offset_pred.at(i, j, c);
        sum += d * d;
      }
    }
  }
  return sum * SafeInverse(CountClasses(mask).positive);
}

double DepthLoss(const Grid& mask, const Grid& depth_gt,
                 const Grid& depth_pred) {
  CheckMask(mask);
  CheckSpatial(mask, depth_gt, 1, "depth target");
  CheckSpatial(mask, depth_pred, 1, "depth prediction");
  double sum = 0.0;
  for (std::size_t k = 0; k < mask.size(); ++k) {
    if (mask.data()[k] != 1.0) continue;
    const double d = depth_gt.data()[k] - depth_pred.data()[k];
    sum += d * d;
  }
  return sum * SafeInverse(CountClasses(mask).positive);
}

double TotalLoss(const LossParts& parts, const LossConfig& cfg) {
  if (!(cfg.gamma >= 0.0)) {
    Fail(ErrorCode::kInvalidArgument, "gamma must be non-negative");
  }
  return parts.conf + parts.offset + cfg.gamma * parts.depth;
}

Grid ConfLossGrad(const Grid& mask, const Grid& conf_pred) {
  CheckMask(mask);
  CheckSpatial(mask, conf_pred, 1, "confidence prediction");
  const ClassCounts n = CountClasses(mask);
  Grid grad(mask.rows(), mask.cols(), 1);
  for (std::size_t k = 0; k < mask.size(); ++k) {
    const double p = conf_pred.data()[k];
    grad.data()[k] = mask.data()[k] == 1.0
                         ? -2.0 * (1.0 - p) * SafeInverse(n.positive)
                         : 2.0 * p * SafeInverse(n.negative);
  }
  return grad;
}

Grid OffsetLossGrad(const Grid& mask, const Grid& offset_gt,
                    const Grid& offset_pred) {
  CheckMask(mask);
  CheckSpatial(mask, offset_gt, 2, "offset target");
  CheckSpatial(mask, offset_pred, 2, "offset prediction");
  const double inv = SafeInverse(CountClasses(mask).positive);
  Grid grad(mask.rows(), mask.cols(), 2);
  for (int i = 0; i < mask.rows(); ++i) {
    for (int j = 0; j < mask.cols(); ++j) {
      if (mask.at(i, j) != 1.0) continue;
      for (int c = 0; c < 2; ++c) {
        grad.at(i, j, c) =
            2.0 * (offset_pred.at(i, j, c) - offset_gt.at(i, j, c)) * inv;
      }
    }
  }
  return grad;
}

Grid DepthLossGrad(const Grid& mask, const Grid& depth_gt,
                   const Grid& depth_pred) {
  CheckMask(mask);
  CheckSpatial(mask, depth_gt, 1, "depth target");
  CheckSpatial(mask, depth_pred, 1, "depth prediction");
  const double inv = SafeInverse(CountClasses(mask).positive);
  Grid grad(mask.rows(), mask.cols(), 1);
  for (std::size_t k = 0; k < mask.size(); ++k) {
    if (mask.data()[k] != 1.0) continue;
    grad.data()[k] = 2.0 * (depth_pred.data()[k] - depth_gt.data()[k]) * inv;
  }
  return grad;
}

}  // namespace clinet
