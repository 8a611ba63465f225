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

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "clinet/autolabel.hpp"
#include "clinet/decoder.hpp"
#include "clinet/geometry.hpp"
#include "clinet/metrics.hpp"
#include "clinet/vectormap.hpp"

namespace clinet {

// Strict rejects unknown object keys; lenient ignores them.
enum class ParseMode { kStrict, kLenient };

// ---- file helpers ---------------------------------------------------------

std::string ReadTextFile(const std::filesystem::path& path);
std::vector<std::uint8_t> ReadBinaryFile(const std::filesystem::path& path);
void WriteFile(const std::filesystem::path& path, std::string_view contents);
void WriteFile(const std::filesystem::path& path,
               std::span<const std::uint8_t> contents);

// ---- JSON artifacts -------------------------------------------------------
//
// Serializers are canonical: fixed key order, shortest round-trip number
// formatting, two-space indentation, LF line endings, trailing newline.

VectorMap ParseMap(std::string_view text, ParseMode mode = ParseMode::kStrict);
std::string SerializeMap(const VectorMap& map);

// NDJSON, one ego pose per line, strictly increasing timestamps.
std::vector<SE3Pose> ParsePoseTrack(std::string_view text,
                                    ParseMode mode = ParseMode::kStrict);
std::string SerializePoseTrack(std::span<const SE3Pose> track);

struct CalibratedCamera {
  std::string id;
  CameraModel camera;
};

struct Calibration {
  std::vector<CalibratedCamera> cameras;

  // Throws kInvalidArgument for unknown ids.
  const CameraModel& Get(const std::string& id) const;
};

Calibration ParseCalibration(std::string_view text,
                             ParseMode mode = ParseMode::kStrict);
std::string SerializeCalibration(const Calibration& calib);

// Frame list: NDJSON {"frame_id": str, "timestamp_ns": int}.
std::vector<FrameInfo> ParseFrameList(std::string_view text,
                                      ParseMode mode = ParseMode::kStrict);
std::string SerializeFrameList(std::span<const FrameInfo> frames);

// Only h0, w0, h1, w1 and s of the label config are stored.
LabelGrid ParseLabel(std::string_view text, ParseMode mode = ParseMode::kStrict);
std::string SerializeLabel(const LabelGrid& label);

std::string SerializeReport(const EvalReport& report);
// One NDJSON line (with trailing LF).
std::string SerializeFrameResult(const FrameResult& frame);

// ---- CLTN tensor container ------------------------------------------------
//
// "CLTN" | u8 version=1 | u8 dtype=1 (f32) | u16 rank | rank x u32 dims |
// row-major f32 payload. All integers and floats little-endian.

struct TensorBlob {
  std::vector<std::uint32_t> dims;
  std::vector<float> data;

  std::uint64_t NumElements() const;
};

inline constexpr std::size_t kMaxTensorRank = 8;

TensorBlob ReadTensor(std::span<const std::uint8_t> bytes);
std::vector<std::uint8_t> WriteTensor(const TensorBlob& tensor);

TensorBlob TensorFromGrid(const Grid& grid);
// Accepts rank 2 (h x w) or rank 3 (h x w x c) tensors.
Grid GridFromTensor(const TensorBlob& tensor);

// ---- prediction frames ----------------------------------------------------
//
// A manifest JSON {"frame_id", "camera_id", "s", "conf", "offset", "depth"}
// names three CLTN files relative to the manifest's directory.

struct PredictionManifest {
  std::string frame_id;
  std::string camera_id;
  int s = 8;
  std::string conf;
  std::string offset;
  std::string depth;
};

PredictionManifest ParsePredictionManifest(std::string_view text,
                                           ParseMode mode = ParseMode::kStrict);
std::string SerializePredictionManifest(const PredictionManifest& manifest);

// Loads the manifest and its tensors; the grid config is taken from the
// confidence tensor shape and s. Tensors are validated and clamped.
PredictionGrid LoadPredictionFrame(const std::filesystem::path& manifest_path,
                                   ParseMode mode = ParseMode::kStrict);
// Writes {stem}.conf.cltn, {stem}.offset.cltn, {stem}.depth.cltn and the
// manifest {stem}.pred.json into `dir`. Returns the manifest path.
std::filesystem::path SavePredictionFrame(const PredictionGrid& pred,
                                          const std::filesystem::path& dir,
                                          const std::string& stem);

}  // namespace clinet
