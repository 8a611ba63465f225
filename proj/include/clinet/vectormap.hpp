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

#include <cstddef>
#include <string>
#include <unordered_map>
#include <vector>

#include "clinet/geometry.hpp"

namespace clinet {

enum class LaneKind { kCenterline, kBoundary };

struct Polyline3 {
  std::vector<Vec3> points;
  std::string lane_id;
  LaneKind kind = LaneKind::kCenterline;
  bool is_intersection = false;

  double Length() const;
};

// Throws kInvariantViolation for fewer than two points, non-finite
// coordinates, or consecutive points closer than 1e-6 m.
void ValidatePolyline(const Polyline3& p);

struct Lane {
  Polyline3 line;
  std::vector<std::string> successors;
};

// Lanes keep insertion (file) order; lookup by id is O(1).
class VectorMap {
 public:
  VectorMap() = default;

  // Validates the polyline and rejects duplicate ids. Successors are checked
  // by Validate() once all lanes are present.
  void AddLane(Lane lane);
  void Validate() const;

  const std::vector<Lane>& lanes() const { return lanes_; }
  std::size_t size() const { return lanes_.size(); }
  const Lane* Find(const std::string& lane_id) const;

 private:
  std::vector<Lane> lanes_;
  std::unordered_map<std::string, std::size_t> index_;
};

// Uniform arc-length resampling. Endpoints are always kept; consecutive
// output points are at most spacing_m apart along the curve.
Polyline3 ResamplePolyline(const Polyline3& p, double spacing_m);

// Splits p into maximal runs of points within radius_m (horizontal distance)
// of ego_xy. Runs with fewer than two points are dropped.
std::vector<Polyline3> ClipToHorizon(const Polyline3& p, const Vec2& ego_xy,
                                     double radius_m);

}  // namespace clinet
