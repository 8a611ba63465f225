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

#include "clinet/inspect.hpp"

#include <algorithm>
#include <cstdio>
#include <limits>
#include <map>
#include <sstream>

#include <nlohmann/json.hpp>

#include "clinet/codec.hpp"
#include "clinet/error.hpp"

namespace clinet {
namespace {

using nlohmann::json;

std::string InspectTensor(const std::vector<std::uint8_t>& bytes) {
  const TensorBlob t = ReadTensor(bytes);
  std::ostringstream out;
  out << "CLTN tensor v1 f32, dims [";
  for (std::size_t k = 0; k < t.dims.size(); ++k) out << (k ? ", " : "") << t.dims[k];
  out << "], " << t.data.size() << " elements, " << bytes.size() << " bytes\n";
  if (!t.data.empty()) {
    double lo = std::numeric_limits<double>::infinity(), hi = -lo, sum = 0.0;
    for (float v : t.data) {
      lo = std::min(lo, static_cast<double>(v));
      hi = std::max(hi, static_cast<double>(v));
      sum += v;
    }
    char line[160];
    std::snprintf(line, sizeof(line), "min %.6g  max %.6g  mean %.6g\n", lo, hi,
                  sum / static_cast<double>(t.data.size()));
    out << line;
  }
  return out.str();
}

std::string InspectNdjson(const std::string& text, const json& first) {
  std::ostringstream out;
  if (first.contains("q")) {
    const auto track = ParsePoseTrack(text, ParseMode::kLenient);
    out << "pose track: " << track.size() << " poses";
    if (!track.empty()) {
      out << ", t = [" << track.front().timestamp_ns << ", " << track.back().timestamp_ns
          << "] ns";
    }
    out << "\n";
  } else if (first.contains("windows")) {
    std::size_t lines = std::count(text.begin(), text.end(), '\n');
    out << "per-frame evaluation breakdown: " << lines << " frames\n";
  } else {
    const auto frames = ParseFrameList(text, ParseMode::kLenient);
    out << "frame list: " << frames.size() << " frames\n";
  }
  return out.str();
}

}  // namespace

std::string InspectFile(const std::filesystem::path& path) {
  const std::vector<std::uint8_t> bytes = ReadBinaryFile(path);
  if (bytes.size() >= 4 && std::equal(bytes.begin(), bytes.begin() + 4, "CLTN")) {
    return InspectTensor(bytes);
  }
  const std::string text(bytes.begin(), bytes.end());
  const std::size_t first_nl = text.find('\n');
  if (first_nl != std::string::npos && first_nl + 1 < text.size() &&
      text.front() == '{' && text[first_nl - 1] == '}') {
    // Single-line objects on several lines: NDJSON.
    json first;
    try {
      first = json::parse(text.substr(0, first_nl));
      return InspectNdjson(text, first);
    } catch (const json::parse_error&) {
      // fall through to whole-document JSON
    }
  }

  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    Fail(ErrorCode::kParseError, path.string() + ": " + e.what());
  }
  std::ostringstream out;
  if (doc.is_object() && doc.contains("lanes")) {
    const VectorMap map = ParseMap(text, ParseMode::kLenient);
    std::size_t centerlines = 0, boundaries = 0, intersections = 0;
    for (const Lane& lane : map.lanes()) {
      (lane.line.kind == LaneKind::kCenterline ? centerlines : boundaries)++;
      intersections += lane.line.is_intersection ? 1 : 0;
    }
    out << "vector map: " << map.size() << " lanes (" << centerlines << " centerlines, "
        << boundaries << " boundaries, " << intersections << " in intersections)\n";
  } else if (doc.is_object() && doc.contains("cameras")) {
    const Calibration calib = ParseCalibration(text, ParseMode::kLenient);
    out << "calibration: " << calib.cameras.size() << " cameras\n";
    for (const CalibratedCamera& c : calib.cameras) {
      const CameraModel adj = AdjustIntrinsics(c.camera);
      out << "  " << c.id << ": " << c.camera.width << "x" << c.camera.height << " -> "
          << adj.width << "x" << adj.height << ", fx " << adj.fx << "\n";
    }
  } else if (doc.is_object() && doc.contains("keypoints")) {
    const LabelGrid label = ParseLabel(text, ParseMode::kLenient);
    out << "label " << label.frame_id << "/" << label.camera_id << ": "
        << label.keypoints.size() << " keypoints on a " << label.config.h1 << "x"
        << label.config.w1 << " grid (s=" << label.config.s << ")\n";
  } else if (doc.is_object() && doc.contains("windows")) {
    out << "evaluation report: " << doc.value("frames", 0) << " frames, "
        << doc.value("keypoints", 0) << " keypoints\n";
    for (const json& w : doc["windows"]) {
      char line[160];
      std::snprintf(line, sizeof(line), "  n=%d  P %.3f  R %.3f  F1 %.3f\n",
                    w.value("n", 0), w.value("precision", 0.0),
                    w.value("recall", 0.0), w.value("f1", 0.0));
      out << line;
    }
  } else if (doc.is_object() && doc.contains("conf")) {
    const PredictionManifest m = ParsePredictionManifest(text, ParseMode::kLenient);
    out << "prediction frame " << m.frame_id << "/" << m.camera_id << " (s=" << m.s
        << "): " << m.conf << ", " << m.offset << ", " << m.depth << "\n";
  } else {
    out << "JSON document\n";
  }
  out << doc.dump(2) << "\n";
  return out.str();
}

}  // namespace clinet
