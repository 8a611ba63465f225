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

#include "clinet/vectormap.hpp"

#include <cmath>
#include <utility>

#include "clinet/error.hpp"

namespace clinet {
namespace {

constexpr double kMinPointGap = 1e-6;

}  // namespace

double Polyline3::Length() const {
  double total = 0.0;
  for (std::size_t k = 1; k < points.size(); ++k) {
    total += (points[k] - points[k - 1]).norm();
  }
  return total;
}

void ValidatePolyline(const Polyline3& p) {
  if (p.points.size() < 2) {
    Fail(ErrorCode::kInvariantViolation,
         "lane '" + p.lane_id + "' needs at least 2 points");
  }
  for (std::size_t k = 0; k < p.points.size(); ++k) {
    if (!p.points[k].allFinite()) {
      Fail(ErrorCode::kInvariantViolation, "lane '" + p.lane_id +
                                               "' point " + std::to_string(k) +
                                               " is not finite");
    }
    if (k > 0 && (p.points[k] - p.points[k - 1]).norm() <= kMinPointGap) {
      Fail(ErrorCode::kInvariantViolation,
           "lane '" + p.lane_id + "' has coincident points at index " +
               std::to_string(k));
    }
  }
}

void VectorMap::AddLane(Lane lane) {
  ValidatePolyline(lane.line);
  if (index_.contains(lane.line.lane_id)) {
    Fail(ErrorCode::kInvariantViolation,
         "duplicate lane id '" + lane.line.lane_id + "'");
  }
  index_.emplace(lane.line.lane_id, lanes_.size());
  lanes_.push_back(std::move(lane));
}

void VectorMap::Validate() const {
  for (const Lane& lane : lanes_) {
    for (const std::string& succ : lane.successors) {
      if (!index_.contains(succ)) {
        Fail(ErrorCode::kInvariantViolation, "lane '" + lane.line.lane_id +
                                                 "' has dangling successor '" +
                                                 succ + "'");
      }
    }
  }
}

const Lane* VectorMap::Find(const std::string& lane_id) const {
  auto it = index_.find(lane_id);
  return it == index_.end() ? nullptr : &lanes_[it->second];
}

Polyline3 ResamplePolyline(const Polyline3& p, double spacing_m) {
  if (!(spacing_m > 0.0)) {
    Fail(ErrorCode::kInvalidArgument, "resample spacing must be positive");
  }
  ValidatePolyline(p);

  Polyline3 out;
  out.lane_id = p.lane_id;
  out.kind = p.kind;
  out.is_intersection = p.is_intersection;
  out.points.push_back(p.points.front());

  // Samples sit at multiples of spacing_m along the whole curve; original
  // vertices are kept as well so the curve (and its length) is unchanged.
  double seg_start = 0.0;
  long next_k = 1;
  for (std::size_t k = 1; k < p.points.size(); ++k) {
    const Vec3& a = p.points[k - 1];
    const Vec3& b = p.points[k];
    const double seg_len = (b - a).norm();
    const double seg_end = seg_start + seg_len;
    for (;; ++next_k) {
      const double s = static_cast<double>(next_k) * spacing_m;
      if (s >= seg_end - kMinPointGap) break;
      if (s - seg_start <= kMinPointGap) continue;
      const double u = (s - seg_start) / seg_len;
      out.points.push_back(a + (b - a) * u);
    }
    out.points.push_back(b);
    // The vertex may have consumed a sample that lies within the gap.
    while (static_cast<double>(next_k) * spacing_m <= seg_end + kMinPointGap) {
      ++next_k;
    }
    seg_start = seg_end;
  }
  return out;
}

std::vector<Polyline3> ClipToHorizon(const Polyline3& p, const Vec2& ego_xy,
                                     double radius_m) {
  if (!(radius_m > 0.0)) {
    Fail(ErrorCode::kInvalidArgument, "horizon radius must be positive");
  }
  std::vector<Polyline3> runs;
  Polyline3 current;
  auto flush = [&]() {
    if (current.points.size() >= 2) runs.push_back(std::move(current));
    current = Polyline3{};
  };
  for (const Vec3& pt : p.points) {
    const double dist = (pt.head<2>() - ego_xy).norm();
    if (dist <= radius_m) {
      if (current.points.empty()) {
        current.lane_id = p.lane_id;
        current.kind = p.kind;
        current.is_intersection = p.is_intersection;
      }
      current.points.push_back(pt);
    } else {
      flush();
    }
  }
  flush();
  return runs;
}

}  // namespace clinet
