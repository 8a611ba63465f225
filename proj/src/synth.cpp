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

#include "clinet/synth.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <utility>

#include "clinet/error.hpp"

namespace clinet {

XorShift64Star::XorShift64Star(std::uint64_t seed) {
  // splitmix64 step so that nearby seeds give unrelated streams.
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  z = z ^ (z >> 31);
  state_ = z == 0 ? 0x2545F4914F6CDD1DULL : z;
}

std::uint64_t XorShift64Star::Next() {
  state_ ^= state_ >> 12;
  state_ ^= state_ << 25;
  state_ ^= state_ >> 27;
  return state_ * 0x2545F4914F6CDD1DULL;
}

double XorShift64Star::Uniform() {
  return static_cast<double>(Next() >> 11) * 0x1.0p-53;
}

Layout ParseLayout(const std::string& name) {
  if (name == "straight") return Layout::kStraight;
  if (name == "curve") return Layout::kCurve;
  if (name == "grid_with_intersections" || name == "grid") {
    return Layout::kGridWithIntersections;
  }
  Fail(ErrorCode::kUnsupportedLayout, "unsupported layout '" + name + "'");
}

std::string LayoutName(Layout layout) {
  switch (layout) {
    case Layout::kStraight:
      return "straight";
    case Layout::kCurve:
      return "curve";
    case Layout::kGridWithIntersections:
      return "grid_with_intersections";
  }
  Fail(ErrorCode::kUnsupportedLayout, "unsupported layout");
}

std::vector<CalibratedCamera> DefaultCameraRig(int num_cameras) {
  if (num_cameras != 1 && num_cameras != 3) {
    Fail(ErrorCode::kInvalidArgument, "default rig has 1 or 3 cameras");
  }
  // Columns are the camera x (right), y (down), z (forward) axes in the
  // ego frame (x forward, y left, z up).
  Eigen::Matrix3d base;
  base << 0, 0, 1,  //
      -1, 0, 0,     //
      0, -1, 0;
  auto make = [&](const std::string& id, double yaw_deg) {
    CalibratedCamera c;
    c.id = id;
    CameraModel& cam = c.camera;
    cam.fx = cam.fy = 512.0;
    cam.cx = 512.0;
    cam.cy = 256.0;
    cam.width = 1024;
    cam.height = 512;
    cam.transform = ResizeCrop{0, 0, 1024, 512, 0.5, 0.5};
    const Eigen::Matrix3d yaw =
        Eigen::AngleAxisd(yaw_deg * std::numbers::pi / 180.0, Vec3::UnitZ())
            .toRotationMatrix();
    cam.extrinsic.q = Quat(yaw * base).normalized();
    cam.extrinsic.t = Vec3(1.5, 0.0, 1.6);
    return c;
  };
  std::vector<CalibratedCamera> rig = {make("front_center", 0.0)};
  if (num_cameras == 3) {
    rig.push_back(make("front_left", 50.0));
    rig.push_back(make("front_right", -50.0));
  }
  return rig;
}

int SceneFrameCount(const SceneSpec& spec) {
  return static_cast<int>(std::llround(spec.trajectory_length_m / spec.speed_mps *
                                       spec.frame_rate_hz));
}

namespace {

constexpr double kBehind = 30.0;     // map extent behind the start
constexpr double kLookahead = 150.0;  // map extent past the trajectory end
constexpr double kVertexStep = 10.0;
constexpr std::int64_t kBaseTimestamp = 1'000'000'000;

void ValidateSpec(const SceneSpec& spec) {
  if (!(spec.lane_width_m > 0.0) || spec.num_lanes < 1 ||
      !(spec.trajectory_length_m > 0.0) || !(spec.speed_mps > 0.0) ||
      !(spec.frame_rate_hz > 0.0)) {
    Fail(ErrorCode::kInvalidArgument, "scene dimensions must be positive");
  }
  if (spec.camera_rig.empty()) {
    Fail(ErrorCode::kInvalidArgument, "scene needs at least one camera");
  }
  if (SceneFrameCount(spec) < 1) {
    Fail(ErrorCode::kInvalidArgument, "scene spans less than one frame");
  }
}

// Points from a to b (inclusive) with vertices at most kVertexStep apart.
std::vector<Vec3> StraightPoints(const Vec3& a, const Vec3& b) {
  const double len = (b - a).norm();
  const int n = std::max(1, static_cast<int>(std::ceil(len / kVertexStep)));
  std::vector<Vec3> pts;
  for (int k = 0; k <= n; ++k) pts.push_back(a + (b - a) * (static_cast<double>(k) / n));
  return pts;
}

Lane MakeLane(std::string id, LaneKind kind, bool is_intersection,
              std::vector<Vec3> points) {
  Lane lane;
  lane.line.lane_id = std::move(id);
  lane.line.kind = kind;
  lane.line.is_intersection = is_intersection;
  lane.line.points = std::move(points);
  return lane;
}

struct Interval {
  double lo, hi;
};

// Splits [lo, hi] at the given sorted, disjoint boxes. Returns pieces with a
// flag telling whether the piece lies inside a box.
std::vector<std::pair<Interval, bool>> SplitAt(double lo, double hi,
                                               const std::vector<Interval>& boxes) {
  std::vector<std::pair<Interval, bool>> out;
  double cur = lo;
  for (const Interval& b : boxes) {
    if (b.hi <= cur || b.lo >= hi) continue;
    if (b.lo > cur) out.push_back({{cur, b.lo}, false});
    out.push_back({{std::max(cur, b.lo), std::min(hi, b.hi)}, true});
    cur = std::min(hi, b.hi);
  }
  if (cur < hi) out.push_back({{cur, hi}, false});
  return out;
}

// Adds one lane per piece, chaining consecutive pieces as successors. Inside
// pieces are dropped when skip_inside is set (boundaries stop at boxes).
void AddChain(VectorMap& map, const std::string& prefix, LaneKind kind,
              const std::vector<std::pair<Interval, bool>>& pieces,
              const std::function<Vec3(double)>& point_at, bool skip_inside) {
  std::vector<Lane> chain;
  bool linked = false;
  for (const auto& [iv, inside] : pieces) {
    if (inside && skip_inside) {
      linked = false;
      continue;
    }
    const std::string id = prefix + "_s" + std::to_string(chain.size());
    if (linked) chain.back().successors.push_back(id);
    chain.push_back(MakeLane(id, kind, inside,
                             StraightPoints(point_at(iv.lo), point_at(iv.hi))));
    linked = true;
  }
  for (Lane& lane : chain) map.AddLane(std::move(lane));
}

}  // namespace

Scene GenerateScene(const SceneSpec& spec) {
  ValidateSpec(spec);
  XorShift64Star rng(spec.seed);
  const double w = spec.lane_width_m;
  const int n = spec.num_lanes;
  const double end_x = spec.trajectory_length_m + kLookahead;
  const double road_lo = -0.5 * w;
  const double road_hi = (n - 1) * w + 0.5 * w;

  Scene scene;
  std::function<std::pair<Vec3, double>(double)> ego_at;

  switch (spec.layout) {
    case Layout::kStraight: {
      for (int k = 0; k < n; ++k) {
        scene.map.AddLane(MakeLane("lane_" + std::to_string(k), LaneKind::kCenterline,
                                   false,
                                   StraightPoints({-kBehind, k * w, 0.0},
                                                  {end_x, k * w, 0.0})));
      }
      scene.map.AddLane(MakeLane("edge_right", LaneKind::kBoundary, false,
                                 StraightPoints({-kBehind, road_lo, 0.0},
                                                {end_x, road_lo, 0.0})));
      scene.map.AddLane(MakeLane("edge_left", LaneKind::kBoundary, false,
                                 StraightPoints({-kBehind, road_hi, 0.0},
                                                {end_x, road_hi, 0.0})));
      ego_at = [](double s) { return std::pair{Vec3(s, 0.0, 0.0), 0.0}; };
      break;
    }
    case Layout::kCurve: {
      const double radius = rng.Uniform(60.0, 120.0);
      if (radius - road_hi <= 1.0) {
        Fail(ErrorCode::kInvalidArgument, "road too wide for curve radius");
      }
      const double phi_lo = -kBehind / radius;
      const double phi_hi = std::min(end_x / radius, 1.9 * std::numbers::pi);
      const Vec3 center(0.0, radius, 0.0);
      auto arc = [&](double r) {
        std::vector<Vec3> pts;
        const int steps = static_cast<int>(std::ceil((phi_hi - phi_lo) * radius / 2.0));
        for (int k = 0; k <= steps; ++k) {
          const double phi = phi_lo + (phi_hi - phi_lo) * k / steps;
          pts.push_back(center + r * Vec3(std::sin(phi), -std::cos(phi), 0.0));
        }
        return pts;
      };
      for (int k = 0; k < n; ++k) {
        scene.map.AddLane(MakeLane("lane_" + std::to_string(k), LaneKind::kCenterline,
                                   false, arc(radius - k * w)));
      }
      scene.map.AddLane(MakeLane("edge_outer", LaneKind::kBoundary, false,
                                 arc(radius - road_lo)));
      scene.map.AddLane(MakeLane("edge_inner", LaneKind::kBoundary, false,
                                 arc(radius - road_hi)));
      ego_at = [center, radius](double s) {
        const double phi = s / radius;
        return std::pair{Vec3(center + radius * Vec3(std::sin(phi), -std::cos(phi), 0.0)),
                         phi};
      };
      break;
    }
    case Layout::kGridWithIntersections: {
      const double block = rng.Uniform(50.0, 70.0);
      const double cross_extent = 80.0;
      std::vector<double> cross_x;
      for (double x = block; x + road_hi < end_x; x += block) cross_x.push_back(x);

      // Variable x of the main road crosses each box [xc + road_lo, xc + road_hi].
      std::vector<Interval> main_boxes;
      for (double xc : cross_x) main_boxes.push_back({xc + road_lo, xc + road_hi});
      const auto main_pieces = SplitAt(-kBehind, end_x, main_boxes);
      for (int k = 0; k < n; ++k) {
        const double y = k * w;
        AddChain(scene.map, "main_l" + std::to_string(k), LaneKind::kCenterline,
                 main_pieces, [y](double x) { return Vec3(x, y, 0.0); }, false);
      }
      AddChain(scene.map, "main_edge_right", LaneKind::kBoundary, main_pieces,
               [road_lo](double x) { return Vec3(x, road_lo, 0.0); }, true);
      AddChain(scene.map, "main_edge_left", LaneKind::kBoundary, main_pieces,
               [road_hi](double x) { return Vec3(x, road_hi, 0.0); }, true);

      const auto cross_pieces =
          SplitAt(-cross_extent, cross_extent, {{road_lo, road_hi}});
      for (std::size_t m = 0; m < cross_x.size(); ++m) {
        const double xc = cross_x[m];
        const std::string street = "cross" + std::to_string(m);
        for (int k = 0; k < n; ++k) {
          const double x = xc + k * w;
          AddChain(scene.map, street + "_l" + std::to_string(k), LaneKind::kCenterline,
                   cross_pieces, [x](double y) { return Vec3(x, y, 0.0); }, false);
        }
        const double xl = xc + road_lo, xr = xc + road_hi;
        AddChain(scene.map, street + "_edge_a", LaneKind::kBoundary, cross_pieces,
                 [xl](double y) { return Vec3(xl, y, 0.0); }, true);
        AddChain(scene.map, street + "_edge_b", LaneKind::kBoundary, cross_pieces,
                 [xr](double y) { return Vec3(xr, y, 0.0); }, true);
      }
      ego_at = [](double s) { return std::pair{Vec3(s, 0.0, 0.0), 0.0}; };
      break;
    }
  }

  // Place the whole scene in the city frame with a seeded rigid transform.
  const double world_yaw = rng.Uniform(0.0, 2.0 * std::numbers::pi);
  const Vec3 world_t(std::round(rng.Uniform(-500.0, 500.0)),
                     std::round(rng.Uniform(-500.0, 500.0)), 0.0);
  SE3Pose world;
  world.q = Quat(Eigen::AngleAxisd(world_yaw, Vec3::UnitZ()));
  world.t = world_t;

  VectorMap placed;
  for (const Lane& lane : scene.map.lanes()) {
    Lane moved = lane;
    for (Vec3& p : moved.line.points) p = TransformPoint(world, p);
    placed.AddLane(std::move(moved));
  }
  placed.Validate();
  scene.map = std::move(placed);

  const int frames = SceneFrameCount(spec);
  const std::int64_t period_ns =
      static_cast<std::int64_t>(std::llround(1e9 / spec.frame_rate_hz));
  for (int k = 0; k <= frames; ++k) {
    const double t_s = static_cast<double>(k) * static_cast<double>(period_ns) * 1e-9;
    const auto [pos, yaw] = ego_at(spec.speed_mps * t_s);
    SE3Pose local;
    local.timestamp_ns = kBaseTimestamp + k * period_ns;
    local.t = pos;
    local.q = Quat(Eigen::AngleAxisd(yaw, Vec3::UnitZ()));
    SE3Pose pose = Compose(world, local);
    pose.timestamp_ns = local.timestamp_ns;
    scene.poses.push_back(pose);
  }
  for (int k = 0; k < frames; ++k) {
    char id[32];
    std::snprintf(id, sizeof(id), "f%06d", k);
    scene.frames.push_back({id, "", kBaseTimestamp + k * period_ns + period_ns / 2});
  }
  scene.calibration.cameras = spec.camera_rig;
  return scene;
}

}  // namespace clinet
