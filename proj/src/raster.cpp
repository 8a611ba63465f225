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

#include <algorithm>
#include <cmath>
#include <csetjmp>
#include <cstring>

#include <png.h>

#include "clinet/error.hpp"
#include "clinet/synth.hpp"

namespace clinet {
namespace {

using Polygon = std::vector<Vec3>;

// Sutherland-Hodgman against the half-space sign * (z - plane) >= 0.
Polygon ClipZ(const Polygon& in, double plane, double sign) {
  Polygon out;
  for (std::size_t k = 0; k < in.size(); ++k) {
    const Vec3& a = in[k];
    const Vec3& b = in[(k + 1) % in.size()];
    const double da = sign * (a.z() - plane);
    const double db = sign * (b.z() - plane);
    if (da >= 0.0) out.push_back(a);
    if ((da >= 0.0) != (db >= 0.0)) {
      out.push_back(a + (b - a) * (da / (da - db)));
    }
  }
  return out;
}

void SetPixel(RgbImage& img, int x, int y, const std::uint8_t rgb[3]) {
  if (x < 0 || y < 0 || x >= img.width || y >= img.height) return;
  std::memcpy(&img.pixels[(static_cast<std::size_t>(y) * img.width + x) * 3], rgb, 3);
}

// Even-odd scanline fill sampled at pixel centers.
void FillPolygon(RgbImage& img, const std::vector<Vec2>& poly,
                 const std::uint8_t rgb[3]) {
  if (poly.size() < 3) return;
  double ymin = poly[0].y(), ymax = poly[0].y();
  for (const Vec2& p : poly) {
    ymin = std::min(ymin, p.y());
    ymax = std::max(ymax, p.y());
  }
  const int row0 = std::max(0, static_cast<int>(std::floor(ymin)));
  const int row1 = std::min(img.height - 1, static_cast<int>(std::ceil(ymax)));
  std::vector<double> xs;
  for (int row = row0; row <= row1; ++row) {
    const double yc = row + 0.5;
    xs.clear();
    for (std::size_t k = 0; k < poly.size(); ++k) {
      const Vec2& a = poly[k];
      const Vec2& b = poly[(k + 1) % poly.size()];
      if ((a.y() <= yc) == (b.y() <= yc)) continue;
      xs.push_back(a.x() + (yc - a.y()) * (b.x() - a.x()) / (b.y() - a.y()));
    }
    std::sort(xs.begin(), xs.end());
    for (std::size_t k = 0; k + 1 < xs.size(); k += 2) {
      const int c0 = std::max(0, static_cast<int>(std::ceil(xs[k] - 0.5)));
      const int c1 = std::min(img.width - 1, static_cast<int>(std::ceil(xs[k + 1] - 0.5)) - 1);
      for (int col = c0; col <= c1; ++col) SetPixel(img, col, row, rgb);
    }
  }
}

// 2x2 stamp stepped at half-pixel intervals.
void DrawLine(RgbImage& img, const Vec2& a, const Vec2& b, const std::uint8_t rgb[3]) {
  const double len = (b - a).norm();
  if (!std::isfinite(len)) return;
  const int steps = std::max(1, static_cast<int>(std::ceil(2.0 * len)));
  for (int k = 0; k <= steps; ++k) {
    const Vec2 p = a + (b - a) * (static_cast<double>(k) / steps);
    const int x = static_cast<int>(std::floor(p.x()));
    const int y = static_cast<int>(std::floor(p.y()));
    SetPixel(img, x, y, rgb);
    SetPixel(img, x + 1, y, rgb);
    SetPixel(img, x, y + 1, rgb);
    SetPixel(img, x + 1, y + 1, rgb);
  }
}

}  // namespace

RgbImage RasterizeFrame(const VectorMap& map, const CameraModel& camera,
                        const SE3Pose& ego_pose, int width, int height,
                        const RasterStyle& style) {
  const CameraModel cam = AdjustIntrinsics(camera);
  if (cam.width != width || cam.height != height) {
    Fail(ErrorCode::kConfigMismatch,
         "render size " + std::to_string(width) + "x" + std::to_string(height) +
             " does not match adjusted camera " + std::to_string(cam.width) + "x" +
             std::to_string(cam.height));
  }
  const SE3Pose cam_in_city = Compose(ego_pose, camera.extrinsic);
  const SE3Pose city_to_cam = Invert(cam_in_city);
  const Eigen::Matrix3d rot = cam_in_city.q.toRotationMatrix();

  RgbImage img;
  img.width = width;
  img.height = height;
  img.pixels.resize(static_cast<std::size_t>(width) * height * 3);
  for (int y = 0; y < height; ++y) {
    for (int x = 0; x < width; ++x) {
      const Vec3 ray((x + 0.5 - cam.cx) / cam.fx, (y + 0.5 - cam.cy) / cam.fy, 1.0);
      SetPixel(img, x, y, (rot * ray).z() < 0.0 ? kGroundRgb : kSkyRgb);
    }
  }

  auto project_polygon = [&](Polygon poly) {
    poly = ClipZ(poly, style.near_m, 1.0);
    if (!poly.empty()) poly = ClipZ(poly, style.far_m, -1.0);
    std::vector<Vec2> px;
    for (const Vec3& p : poly) px.push_back(Project(cam, p));
    return px;
  };

  const double half = 0.5 * style.lane_width_m;
  for (const Lane& lane : map.lanes()) {
    if (lane.line.kind != LaneKind::kCenterline) continue;
    const Polyline3 dense = ResamplePolyline(lane.line, 2.0);
    const std::vector<Vec3>& pts = dense.points;
    // Vertex normals so neighbouring quads share an edge.
    std::vector<Vec3> normals(pts.size(), Vec3::Zero());
    for (std::size_t k = 0; k < pts.size(); ++k) {
      const Vec3 d = pts[std::min(k + 1, pts.size() - 1)] - pts[k == 0 ? 0 : k - 1];
      const Vec3 nrm(-d.y(), d.x(), 0.0);
      if (nrm.norm() > 0.0) normals[k] = nrm.normalized() * half;
    }
    for (std::size_t k = 1; k < pts.size(); ++k) {
      const Vec3& a = pts[k - 1];
      const Vec3& b = pts[k];
      const Vec3& na = normals[k - 1];
      const Vec3& nb = normals[k];
      if (na.norm() == 0.0 || nb.norm() == 0.0) continue;
      const Polygon quad = {
          TransformPoint(city_to_cam, a - na), TransformPoint(city_to_cam, b - nb),
          TransformPoint(city_to_cam, b + nb), TransformPoint(city_to_cam, a + na)};
      FillPolygon(img, project_polygon(quad), kRoadRgb);
    }
  }
  for (const Lane& lane : map.lanes()) {
    if (lane.line.kind != LaneKind::kBoundary) continue;
    const Polyline3 dense = ResamplePolyline(lane.line, 1.0);
    for (std::size_t k = 1; k < dense.points.size(); ++k) {
      Vec3 a = TransformPoint(city_to_cam, dense.points[k - 1]);
      Vec3 b = TransformPoint(city_to_cam, dense.points[k]);
      if (a.z() < style.near_m && b.z() < style.near_m) continue;
      if (a.z() > style.far_m && b.z() > style.far_m) continue;
      auto clip_to = [](Vec3& p, const Vec3& q, double plane) {
        p = p + (q - p) * ((plane - p.z()) / (q.z() - p.z()));
      };
      if (a.z() < style.near_m) clip_to(a, b, style.near_m);
      if (b.z() < style.near_m) clip_to(b, a, style.near_m);
      if (a.z() > style.far_m) clip_to(a, b, style.far_m);
      if (b.z() > style.far_m) clip_to(b, a, style.far_m);
      DrawLine(img, Project(cam, a), Project(cam, b), kLineRgb);
    }
  }
  return img;
}

namespace {

void PngWriteToVector(png_structp png, png_bytep data, png_size_t length) {
  auto* out = static_cast<std::vector<std::uint8_t>*>(png_get_io_ptr(png));
  out->insert(out->end(), data, data + length);
}

void PngFlush(png_structp) {}

}  // namespace

std::vector<std::uint8_t> EncodePng(const RgbImage& image) {
  std::vector<std::uint8_t> out;
  png_structp png =
      png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
  if (png == nullptr) Fail(ErrorCode::kIoError, "png_create_write_struct failed");
  png_infop info = png_create_info_struct(png);
  if (info == nullptr || setjmp(png_jmpbuf(png))) {
    png_destroy_write_struct(&png, &info);
    Fail(ErrorCode::kIoError, "png encoding failed");
  }
  png_set_write_fn(png, &out, PngWriteToVector, PngFlush);
  png_set_IHDR(png, info, static_cast<png_uint_32>(image.width),
               static_cast<png_uint_32>(image.height), 8, PNG_COLOR_TYPE_RGB,
               PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT,
               PNG_FILTER_TYPE_DEFAULT);
  png_write_info(png, info);
  for (int y = 0; y < image.height; ++y) {
    png_write_row(png, const_cast<png_bytep>(image.at(0, y)));
  }
  png_write_end(png, nullptr);
  png_destroy_write_struct(&png, &info);
  return out;
}

}  // namespace clinet
