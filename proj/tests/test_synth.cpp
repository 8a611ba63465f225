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

#include <gtest/gtest.h>

#include <cmath>

#include "clinet/codec.hpp"
#include "clinet/synth.hpp"
#include "support/expect.hpp"
#include "support/oracles.hpp"

namespace clinet {
namespace {

Scene Make(Layout layout, std::uint64_t seed, int cameras = 1) {
  SceneSpec spec;
  spec.layout = layout;
  spec.seed = seed;
  spec.camera_rig = DefaultCameraRig(cameras);
  return GenerateScene(spec);
}

// Ego-start frame: undoes the seeded world placement.
std::vector<Vec3> ToLocal(const Scene& scene, const std::vector<Vec3>& pts) {
  const SE3Pose inv = Invert(scene.poses.front());
  std::vector<Vec3> out;
  for (const Vec3& p : pts) out.push_back(TransformPoint(inv, p));
  return out;
}

double DistanceToPolyline(const Vec3& p, const std::vector<Vec3>& line) {
  double best = 1e300;
  for (std::size_t k = 1; k < line.size(); ++k) {
    best = std::min(best, oracle::PointSegmentDistance(p, line[k - 1], line[k]));
  }
  return best;
}

TEST(Rng, FixedSequenceAndRange) {
  XorShift64Star a(42), b(42), c(43);
  bool differs = false;
  for (int k = 0; k < 1000; ++k) {
    const std::uint64_t x = a.Next();
    EXPECT_EQ(x, b.Next());
    differs |= x != c.Next();
  }
  EXPECT_TRUE(differs);
  XorShift64Star zero(0);
  EXPECT_NE(zero.Next(), 0u);
  for (int k = 0; k < 10000; ++k) {
    const double u = zero.Uniform();
    EXPECT_GE(u, 0.0);
    EXPECT_LT(u, 1.0);
  }
}

TEST(Layouts, NamesAndUnsupported) {
  for (Layout l : {Layout::kStraight, Layout::kCurve, Layout::kGridWithIntersections}) {
    EXPECT_EQ(ParseLayout(LayoutName(l)), l);
  }
  EXPECT_EQ(LayoutName(Layout::kGridWithIntersections), "grid_with_intersections");
  ExpectCode(ErrorCode::kUnsupportedLayout, [] { ParseLayout("spiral"); });
}

TEST(GenerateScene, DeterministicInSeed) {
  for (Layout l : {Layout::kStraight, Layout::kCurve, Layout::kGridWithIntersections}) {
    const Scene a = Make(l, 7, 3), b = Make(l, 7, 3), c = Make(l, 8, 3);
    EXPECT_EQ(SerializeMap(a.map), SerializeMap(b.map));
    EXPECT_EQ(SerializePoseTrack(a.poses), SerializePoseTrack(b.poses));
    EXPECT_EQ(SerializeFrameList(a.frames), SerializeFrameList(b.frames));
    EXPECT_EQ(SerializeCalibration(a.calibration), SerializeCalibration(b.calibration));
    EXPECT_NE(SerializeMap(a.map), SerializeMap(c.map));
  }
}

TEST(GenerateScene, InvalidSpecs) {
  SceneSpec spec;
  ExpectCode(ErrorCode::kInvalidArgument, [&] { GenerateScene(spec); });
  spec.camera_rig = DefaultCameraRig(1);
  spec.num_lanes = 0;
  ExpectCode(ErrorCode::kInvalidArgument, [&] { GenerateScene(spec); });
  spec.num_lanes = 2;
  spec.speed_mps = -1;
  ExpectCode(ErrorCode::kInvalidArgument, [&] { GenerateScene(spec); });
  ExpectCode(ErrorCode::kInvalidArgument, [] { DefaultCameraRig(2); });
}

TEST(GenerateScene, StraightLanesParallel) {
  const Scene s = Make(Layout::kStraight, 3);
  const Lane* l0 = s.map.Find("lane_0");
  const Lane* l1 = s.map.Find("lane_1");
  ASSERT_TRUE(l0 && l1);
  ASSERT_EQ(l0->line.points.size(), l1->line.points.size());
  const Vec3 dir = (l0->line.points.back() - l0->line.points.front()).normalized();
  for (std::size_t k = 0; k < l0->line.points.size(); ++k) {
    const Vec3 d = l1->line.points[k] - l0->line.points[k];
    EXPECT_NEAR(d.norm(), 3.5, 1e-9);
    EXPECT_NEAR(d.dot(dir), 0.0, 1e-9);
    EXPECT_NEAR(l0->line.points[k].z(), 0.0, 1e-12);
  }
  int boundaries = 0;
  for (const Lane& lane : s.map.lanes()) boundaries += lane.line.kind == LaneKind::kBoundary;
  EXPECT_EQ(boundaries, 2);
}

TEST(GenerateScene, PosesFramesAndEgoOnLane) {
  for (Layout l : {Layout::kStraight, Layout::kCurve, Layout::kGridWithIntersections}) {
    const Scene s = Make(l, 11);
    ASSERT_EQ(s.frames.size(), 130u);
    ASSERT_EQ(s.poses.size(), 131u);
    for (std::size_t k = 1; k < s.poses.size(); ++k) {
      EXPECT_EQ(s.poses[k].timestamp_ns - s.poses[k - 1].timestamp_ns, 100'000'000);
      // Arc steps of 1 m measure slightly shorter as chords on the curve.
      EXPECT_NEAR((s.poses[k].t - s.poses[k - 1].t).norm(), 1.0,
                  l == Layout::kCurve ? 1e-4 : 1e-9);
    }
    for (const FrameInfo& f : s.frames) {
      EXPECT_GT(f.timestamp_ns, s.poses.front().timestamp_ns);
      EXPECT_LT(f.timestamp_ns, s.poses.back().timestamp_ns);
    }
    // The ego drives lane 0 (chained pieces on the grid layout).
    std::vector<Vec3> lane0;
    for (const Lane& lane : s.map.lanes()) {
      const std::string& id = lane.line.lane_id;
      if (id == "lane_0" || id.rfind("main_l0_", 0) == 0) {
        lane0.insert(lane0.end(), lane.line.points.begin(), lane.line.points.end());
      }
    }
    ASSERT_FALSE(lane0.empty());
    // Chord sagitta on the curve layout is at most 2^2 / (8 * 60) m.
    const double tol = l == Layout::kCurve ? 0.01 : 1e-9;
    for (const SE3Pose& p : s.poses) EXPECT_LE(DistanceToPolyline(p.t, lane0), tol);
  }
}

TEST(GenerateScene, IntersectionFlagsMatchContainment) {
  for (std::uint64_t seed : {1u, 2u, 3u}) {
    const Scene s = Make(Layout::kGridWithIntersections, seed);
    const double half = 0.5 * 3.5;
    // Corridors from centerline directions in the ego-start frame.
    std::vector<double> main_y, cross_x;
    std::vector<std::vector<Vec3>> local;
    for (const Lane& lane : s.map.lanes()) {
      local.push_back(ToLocal(s, lane.line.points));
      if (lane.line.kind != LaneKind::kCenterline) continue;
      const Vec3 d = local.back().back() - local.back().front();
      if (std::abs(d.y()) < 1e-6) main_y.push_back(local.back().front().y());
      if (std::abs(d.x()) < 1e-6) cross_x.push_back(local.back().front().x());
    }
    ASSERT_FALSE(cross_x.empty());
    auto in_corridor = [&](double v, const std::vector<double>& centers, double margin) {
      for (double c : centers) {
        if (std::abs(v - c) < half - margin) return true;
      }
      return false;
    };
    // Strictly inside a box by `margin`.
    auto in_box = [&](const Vec3& p, double margin) {
      return in_corridor(p.y(), main_y, margin) && in_corridor(p.x(), cross_x, margin);
    };
    // Inside or on the edge of a box.
    auto in_closed_box = [&](const Vec3& p) { return in_box(p, -1e-6); };

    int flagged = 0;
    for (std::size_t k = 0; k < s.map.lanes().size(); ++k) {
      const Lane& lane = s.map.lanes()[k];
      Polyline3 line;
      line.points = local[k];
      const auto dense = ResamplePolyline(line, 0.25).points;
      flagged += lane.line.is_intersection;
      for (const Vec3& p : dense) {
        if (lane.line.is_intersection) {
          EXPECT_TRUE(in_closed_box(p)) << lane.line.lane_id;
        } else {
          EXPECT_FALSE(in_box(p, 1e-6)) << lane.line.lane_id;
        }
      }
      if (lane.line.kind == LaneKind::kBoundary) {
        EXPECT_FALSE(lane.line.is_intersection);
      }
    }
    EXPECT_GT(flagged, 0);
  }
}

TEST(Rasterize, EmptyMapIsSkyAndGround) {
  const VectorMap empty;
  SE3Pose ego;
  for (const CalibratedCamera& c : DefaultCameraRig(3)) {
    const RgbImage img = RasterizeFrame(empty, c.camera, ego, 512, 256);
    ASSERT_EQ(img.width, 512);
    ASSERT_EQ(img.height, 256);
    ASSERT_EQ(img.pixels.size(), 512u * 256u * 3u);
    for (int y = 0; y < 256; ++y) {
      const std::uint8_t* want = y < 128 ? kSkyRgb : kGroundRgb;
      for (int x = 0; x < 512; x += 7) {
        EXPECT_EQ(std::memcmp(img.at(x, y), want, 3), 0) << x << "," << y;
      }
    }
  }
  ExpectCode(ErrorCode::kConfigMismatch,
             [&] { RasterizeFrame(empty, DefaultCameraRig(1)[0].camera, ego, 256, 128); });
}

TEST(Rasterize, DeterministicAndPng) {
  const Scene s = Make(Layout::kGridWithIntersections, 4, 3);
  const auto& cam = s.calibration.cameras[1].camera;
  const RgbImage a = RasterizeFrame(s.map, cam, s.poses[20], 512, 256);
  const RgbImage b = RasterizeFrame(s.map, cam, s.poses[20], 512, 256);
  EXPECT_EQ(a.pixels, b.pixels);
  const auto png = EncodePng(a);
  EXPECT_EQ(png, EncodePng(b));
  ASSERT_GT(png.size(), 24u);
  const std::uint8_t sig[8] = {0x89, 'P', 'N', 'G', '\r', '\n', 0x1a, '\n'};
  EXPECT_EQ(std::memcmp(png.data(), sig, 8), 0);
  // IHDR width and height, big-endian.
  EXPECT_EQ((png[16] << 24) | (png[17] << 16) | (png[18] << 8) | png[19], 512);
  EXPECT_EQ((png[20] << 24) | (png[21] << 16) | (png[22] << 8) | png[23], 256);
}

TEST(Rasterize, BoundaryLinesConvergeToHorizon) {
  const Scene s = Make(Layout::kStraight, 6);
  const CalibratedCamera& c = s.calibration.cameras[0];
  const CameraModel cam = AdjustIntrinsics(c.camera);
  const SE3Pose& ego = s.poses[10];
  const RgbImage img = RasterizeFrame(s.map, c.camera, ego, 512, 256);
  const SE3Pose city_to_cam = Invert(Compose(ego, c.camera.extrinsic));
  for (const char* id : {"edge_left", "edge_right"}) {
    const Polyline3 dense = ResamplePolyline(s.map.Find(id)->line, 1.0);
    double prev_dx = 1e300;
    int checked = 0;
    for (const Vec3& p : dense.points) {
      const Vec3 q = TransformPoint(city_to_cam, p);
      if (q.z() < 4.0 || q.z() > 140.0) continue;
      const Vec2 px = Project(cam, q);
      if (px.x() < 0 || px.x() >= 511 || px.y() < 0 || px.y() >= 255) continue;
      EXPECT_EQ(std::memcmp(img.at(static_cast<int>(px.x()), static_cast<int>(px.y())),
                            kLineRgb, 3),
                0)
          << id << " at depth " << q.z();
      // Farther points sit closer to the principal point and the horizon.
      const double dx = std::abs(px.x() - cam.cx);
      EXPECT_LT(dx, prev_dx);
      EXPECT_GT(px.y(), cam.cy);
      prev_dx = dx;
      ++checked;
    }
    EXPECT_GT(checked, 50);
    EXPECT_LT(prev_dx, 15.0);
  }
}

}  // namespace
}  // namespace clinet
