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

#include "clinet/clinet.h"

#include <cstdlib>
#include <cstring>
#include <memory>
#include <new>
#include <string>
#include <utility>
#include <vector>

#include "clinet/autolabel.hpp"
#include "clinet/codec.hpp"
#include "clinet/decoder.hpp"
#include "clinet/error.hpp"
#include "clinet/inspect.hpp"
#include "clinet/losses.hpp"
#include "clinet/metrics.hpp"
#include "clinet/synth.hpp"

struct clinet_map {
  clinet::VectorMap map;
};
struct clinet_poses {
  std::vector<clinet::SE3Pose> track;
};
struct clinet_calib {
  clinet::Calibration calib;
};
struct clinet_frames {
  std::vector<clinet::FrameInfo> frames;
};
struct clinet_label {
  clinet::LabelGrid grid;
};
struct clinet_pred {
  clinet::PredictionGrid grid;
};
struct clinet_frame_result {
  clinet::FrameResult result;
};
struct clinet_tensor {
  clinet::TensorBlob blob;
};

namespace {

using namespace clinet;

thread_local std::string g_last_error;

clinet_status ToStatus(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument: return CLINET_ERR_INVALID_ARGUMENT;
    case ErrorCode::kParseError: return CLINET_ERR_PARSE;
    case ErrorCode::kInvariantViolation: return CLINET_ERR_INVARIANT;
    case ErrorCode::kIoError: return CLINET_ERR_IO;
    case ErrorCode::kBehindCamera: return CLINET_ERR_BEHIND_CAMERA;
    case ErrorCode::kNonPositiveDepth: return CLINET_ERR_NONPOSITIVE_DEPTH;
    case ErrorCode::kOutOfRange: return CLINET_ERR_OUT_OF_RANGE;
    case ErrorCode::kEmptyTrack: return CLINET_ERR_EMPTY_TRACK;
    case ErrorCode::kConfigMismatch: return CLINET_ERR_CONFIG_MISMATCH;
    case ErrorCode::kPixelOutOfBounds: return CLINET_ERR_PIXEL_OUT_OF_BOUNDS;
    case ErrorCode::kShapeMismatch: return CLINET_ERR_SHAPE_MISMATCH;
    case ErrorCode::kGridMismatch: return CLINET_ERR_GRID_MISMATCH;
    case ErrorCode::kBadMagic: return CLINET_ERR_BAD_MAGIC;
    case ErrorCode::kUnsupportedVersion: return CLINET_ERR_UNSUPPORTED_VERSION;
    case ErrorCode::kTruncatedPayload: return CLINET_ERR_TRUNCATED_PAYLOAD;
    case ErrorCode::kDimOverflow: return CLINET_ERR_DIM_OVERFLOW;
    case ErrorCode::kUnsupportedLayout: return CLINET_ERR_UNSUPPORTED_LAYOUT;
  }
  return CLINET_ERR_INTERNAL;
}

// Runs fn, translating exceptions into a status and the thread's last error.
template <typename Fn>
clinet_status Guard(Fn&& fn) {
  try {
    fn();
    g_last_error.clear();
    return CLINET_OK;
  } catch (const Error& e) {
    g_last_error = e.what();
    return ToStatus(e.code());
  } catch (const std::bad_alloc&) {
    g_last_error = "out of memory";
    return CLINET_ERR_INTERNAL;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return CLINET_ERR_INTERNAL;
  }
}

void Require(bool ok, const char* what) {
  if (!ok) Fail(ErrorCode::kInvalidArgument, what);
}

ParseMode Mode(int strict) { return strict ? ParseMode::kStrict : ParseMode::kLenient; }

char* CopyString(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out == nullptr) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

CameraModel FromC(const clinet_camera& c) {
  CameraModel m;
  m.fx = c.fx;
  m.fy = c.fy;
  m.cx = c.cx;
  m.cy = c.cy;
  m.width = c.width;
  m.height = c.height;
  m.extrinsic.t = Vec3(c.ext_t[0], c.ext_t[1], c.ext_t[2]);
  m.extrinsic.q = Quat(c.ext_q[0], c.ext_q[1], c.ext_q[2], c.ext_q[3]);
  m.transform = {c.crop_x0, c.crop_y0, c.crop_w, c.crop_h, c.scale_x, c.scale_y};
  return m;
}

clinet_camera ToC(const CameraModel& m) {
  clinet_camera c{};
  c.fx = m.fx;
  c.fy = m.fy;
  c.cx = m.cx;
  c.cy = m.cy;
  c.width = m.width;
  c.height = m.height;
  for (int k = 0; k < 3; ++k) c.ext_t[k] = m.extrinsic.t[k];
  c.ext_q[0] = m.extrinsic.q.w();
  c.ext_q[1] = m.extrinsic.q.x();
  c.ext_q[2] = m.extrinsic.q.y();
  c.ext_q[3] = m.extrinsic.q.z();
  c.crop_x0 = m.transform.crop_x0;
  c.crop_y0 = m.transform.crop_y0;
  c.crop_w = m.transform.crop_w;
  c.crop_h = m.transform.crop_h;
  c.scale_x = m.transform.scale_x;
  c.scale_y = m.transform.scale_y;
  return c;
}

clinet_pose ToC(const SE3Pose& p) {
  clinet_pose c{};
  c.timestamp_ns = p.timestamp_ns;
  for (int k = 0; k < 3; ++k) c.t[k] = p.t[k];
  c.q[0] = p.q.w();
  c.q[1] = p.q.x();
  c.q[2] = p.q.y();
  c.q[3] = p.q.z();
  return c;
}

LabelConfig FromC(const clinet_label_config& c) {
  LabelConfig cfg;
  cfg.h0 = c.h0;
  cfg.w0 = c.w0;
  cfg.h1 = c.h1;
  cfg.w1 = c.w1;
  cfg.s = c.s;
  cfg.max_depth_m = c.max_depth_m;
  cfg.min_points_per_segment = c.min_points_per_segment;
  cfg.min_pixel_spacing = c.min_pixel_spacing;
  cfg.resample_spacing_m = c.resample_spacing_m;
  cfg.min_segment_length_m = c.min_segment_length_m;
  cfg.horizon_radius_m = c.horizon_radius_m;
  return cfg;
}

EvalConfig FromC(const clinet_eval_config& c) {
  EvalConfig cfg;
  Require(c.window_sizes != nullptr || c.num_windows == 0, "window_sizes is null");
  cfg.window_sizes.assign(c.window_sizes, c.window_sizes + c.num_windows);
  cfg.frame_stride = 1;
  cfg.averaging = c.per_frame_average ? Averaging::kPerFrame : Averaging::kPooled;
  return cfg;
}

void Dims(const LabelConfig& cfg, int32_t out[5]) {
  out[0] = cfg.h0;
  out[1] = cfg.w0;
  out[2] = cfg.h1;
  out[3] = cfg.w1;
  out[4] = cfg.s;
}

}  // namespace

extern "C" {

const char* clinet_status_name(clinet_status status) {
  switch (status) {
    case CLINET_OK: return "OK";
    case CLINET_ERR_INVALID_ARGUMENT: return "InvalidArgument";
    case CLINET_ERR_PARSE: return "ParseError";
    case CLINET_ERR_INVARIANT: return "InvariantViolation";
    case CLINET_ERR_IO: return "IoError";
    case CLINET_ERR_BEHIND_CAMERA: return "BehindCamera";
    case CLINET_ERR_NONPOSITIVE_DEPTH: return "NonPositiveDepth";
    case CLINET_ERR_OUT_OF_RANGE: return "OutOfRange";
    case CLINET_ERR_EMPTY_TRACK: return "EmptyTrack";
    case CLINET_ERR_CONFIG_MISMATCH: return "ConfigMismatch";
    case CLINET_ERR_PIXEL_OUT_OF_BOUNDS: return "PixelOutOfBounds";
    case CLINET_ERR_SHAPE_MISMATCH: return "ShapeMismatch";
    case CLINET_ERR_GRID_MISMATCH: return "GridMismatch";
    case CLINET_ERR_BAD_MAGIC: return "BadMagic";
    case CLINET_ERR_UNSUPPORTED_VERSION: return "UnsupportedVersion";
    case CLINET_ERR_TRUNCATED_PAYLOAD: return "TruncatedPayload";
    case CLINET_ERR_DIM_OVERFLOW: return "DimOverflow";
    case CLINET_ERR_UNSUPPORTED_LAYOUT: return "UnsupportedLayout";
    case CLINET_ERR_INTERNAL: return "Internal";
  }
  return "Unknown";
}

const char* clinet_last_error(void) { return g_last_error.c_str(); }

void clinet_string_free(char* str) { std::free(str); }

void clinet_label_config_default(clinet_label_config* cfg) {
  if (cfg == nullptr) return;
  const LabelConfig d;
  cfg->h0 = d.h0;
  cfg->w0 = d.w0;
  cfg->h1 = d.h1;
  cfg->w1 = d.w1;
  cfg->s = d.s;
  cfg->max_depth_m = d.max_depth_m;
  cfg->min_points_per_segment = d.min_points_per_segment;
  cfg->min_pixel_spacing = d.min_pixel_spacing;
  cfg->resample_spacing_m = d.resample_spacing_m;
  cfg->min_segment_length_m = d.min_segment_length_m;
  cfg->horizon_radius_m = d.horizon_radius_m;
}

// ---- geometry ---------------------------------------------------------------

clinet_status clinet_project(const clinet_camera* camera, const double p_cam[3],
                             double pixel_out[2]) {
  return Guard([&] {
    Require(camera && p_cam && pixel_out, "null argument");
    const Vec2 px = Project(FromC(*camera), Vec3(p_cam[0], p_cam[1], p_cam[2]));
    pixel_out[0] = px.x();
    pixel_out[1] = px.y();
  });
}

clinet_status clinet_unproject(const clinet_camera* camera, const double pixel[2],
                               double depth_z, double p_cam_out[3]) {
  return Guard([&] {
    Require(camera && pixel && p_cam_out, "null argument");
    const Vec3 p = Unproject(FromC(*camera), Vec2(pixel[0], pixel[1]), depth_z);
    for (int k = 0; k < 3; ++k) p_cam_out[k] = p[k];
  });
}

clinet_status clinet_adjust_intrinsics(const clinet_camera* camera,
                                       clinet_camera* out) {
  return Guard([&] {
    Require(camera && out, "null argument");
    const CameraModel m = FromC(*camera);
    ValidateCamera(m);
    *out = ToC(AdjustIntrinsics(m));
  });
}

// ---- maps -------------------------------------------------------------------

clinet_status clinet_map_load(const char* path, int strict, clinet_map** out) {
  return Guard([&] {
    Require(path && out, "null argument");
    auto h = std::make_unique<clinet_map>();
    h->map = ParseMap(ReadTextFile(path), Mode(strict));
    *out = h.release();
  });
}

clinet_status clinet_map_save(const clinet_map* map, const char* path) {
  return Guard([&] {
    Require(map && path, "null argument");
    WriteFile(path, SerializeMap(map->map));
  });
}

size_t clinet_map_lane_count(const clinet_map* map) { return map ? map->map.size() : 0; }

void clinet_map_free(clinet_map* map) { delete map; }

// ---- poses ------------------------------------------------------------------

clinet_status clinet_poses_load(const char* path, int strict, clinet_poses** out) {
  return Guard([&] {
    Require(path && out, "null argument");
    auto h = std::make_unique<clinet_poses>();
    h->track = ParsePoseTrack(ReadTextFile(path), Mode(strict));
    *out = h.release();
  });
}

clinet_status clinet_poses_save(const clinet_poses* poses, const char* path) {
  return Guard([&] {
    Require(poses && path, "null argument");
    WriteFile(path, SerializePoseTrack(poses->track));
  });
}

size_t clinet_poses_count(const clinet_poses* poses) {
  return poses ? poses->track.size() : 0;
}

clinet_status clinet_poses_get(const clinet_poses* poses, size_t index,
                               clinet_pose* out) {
  return Guard([&] {
    Require(poses && out, "null argument");
    if (index >= poses->track.size()) Fail(ErrorCode::kOutOfRange, "pose index out of range");
    *out = ToC(poses->track[index]);
  });
}

clinet_status clinet_poses_interpolate(const clinet_poses* poses, int64_t t_ns,
                                       clinet_pose* out) {
  return Guard([&] {
    Require(poses && out, "null argument");
    *out = ToC(InterpolatePose(poses->track, t_ns));
  });
}

void clinet_poses_free(clinet_poses* poses) { delete poses; }

// ---- calibration ------------------------------------------------------------

clinet_status clinet_calib_load(const char* path, int strict, clinet_calib** out) {
  return Guard([&] {
    Require(path && out, "null argument");
    auto h = std::make_unique<clinet_calib>();
    h->calib = ParseCalibration(ReadTextFile(path), Mode(strict));
    *out = h.release();
  });
}

clinet_status clinet_calib_save(const clinet_calib* calib, const char* path) {
  return Guard([&] {
    Require(calib && path, "null argument");
    WriteFile(path, SerializeCalibration(calib->calib));
  });
}

size_t clinet_calib_count(const clinet_calib* calib) {
  return calib ? calib->calib.cameras.size() : 0;
}

const char* clinet_calib_camera_id(const clinet_calib* calib, size_t index) {
  if (calib == nullptr || index >= calib->calib.cameras.size()) return nullptr;
  return calib->calib.cameras[index].id.c_str();
}

clinet_status clinet_calib_get(const clinet_calib* calib, size_t index,
                               clinet_camera* out) {
  return Guard([&] {
    Require(calib && out, "null argument");
    if (index >= calib->calib.cameras.size()) {
      Fail(ErrorCode::kOutOfRange, "camera index out of range");
    }
    *out = ToC(calib->calib.cameras[index].camera);
  });
}

clinet_status clinet_calib_find(const clinet_calib* calib, const char* camera_id,
                                size_t* index_out) {
  return Guard([&] {
    Require(calib && camera_id && index_out, "null argument");
    for (size_t k = 0; k < calib->calib.cameras.size(); ++k) {
      if (calib->calib.cameras[k].id == camera_id) {
        *index_out = k;
        return;
      }
    }
    Fail(ErrorCode::kInvalidArgument,
         std::string("no camera '") + camera_id + "' in calibration");
  });
}

void clinet_calib_free(clinet_calib* calib) { delete calib; }

// ---- frames -----------------------------------------------------------------

clinet_status clinet_frames_load(const char* path, int strict, clinet_frames** out) {
  return Guard([&] {
    Require(path && out, "null argument");
    auto h = std::make_unique<clinet_frames>();
    h->frames = ParseFrameList(ReadTextFile(path), Mode(strict));
    *out = h.release();
  });
}

clinet_status clinet_frames_save(const clinet_frames* frames, const char* path) {
  return Guard([&] {
    Require(frames && path, "null argument");
    WriteFile(path, SerializeFrameList(frames->frames));
  });
}

size_t clinet_frames_count(const clinet_frames* frames) {
  return frames ? frames->frames.size() : 0;
}

clinet_status clinet_frames_get(const clinet_frames* frames, size_t index,
                                const char** frame_id, int64_t* timestamp_ns) {
  return Guard([&] {
    Require(frames != nullptr, "null argument");
    if (index >= frames->frames.size()) Fail(ErrorCode::kOutOfRange, "frame index out of range");
    if (frame_id) *frame_id = frames->frames[index].frame_id.c_str();
    if (timestamp_ns) *timestamp_ns = frames->frames[index].timestamp_ns;
  });
}

void clinet_frames_free(clinet_frames* frames) { delete frames; }

// ---- labels -----------------------------------------------------------------

clinet_status clinet_label_frame(const clinet_map* map, const clinet_calib* calib,
                                 size_t camera_index, const clinet_poses* poses,
                                 const char* frame_id, int64_t timestamp_ns,
                                 const clinet_label_config* cfg, clinet_label** out) {
  return Guard([&] {
    Require(map && calib && poses && frame_id && cfg && out, "null argument");
    if (camera_index >= calib->calib.cameras.size()) {
      Fail(ErrorCode::kOutOfRange, "camera index out of range");
    }
    const CalibratedCamera& cam = calib->calib.cameras[camera_index];
    auto h = std::make_unique<clinet_label>();
    h->grid = LabelFrame(map->map, cam.camera, poses->track,
                         {frame_id, cam.id, timestamp_ns}, FromC(*cfg));
    *out = h.release();
  });
}

clinet_status clinet_label_load(const char* path, int strict, clinet_label** out) {
  return Guard([&] {
    Require(path && out, "null argument");
    auto h = std::make_unique<clinet_label>();
    h->grid = ParseLabel(ReadTextFile(path), Mode(strict));
    *out = h.release();
  });
}

clinet_status clinet_label_save(const clinet_label* label, const char* path) {
  return Guard([&] {
    Require(label && path, "null argument");
    WriteFile(path, SerializeLabel(label->grid));
  });
}

size_t clinet_label_keypoint_count(const clinet_label* label) {
  return label ? label->grid.keypoints.size() : 0;
}

clinet_status clinet_label_keypoint(const clinet_label* label, size_t index,
                                    clinet_keypoint* out) {
  return Guard([&] {
    Require(label && out, "null argument");
    if (index >= label->grid.keypoints.size()) {
      Fail(ErrorCode::kOutOfRange, "keypoint index out of range");
    }
    const KeyPoint& kp = label->grid.keypoints[index];
    out->cell_i = kp.cell.i;
    out->cell_j = kp.cell.j;
    out->offset[0] = kp.offset.x();
    out->offset[1] = kp.offset.y();
    out->pixel[0] = kp.pixel.x();
    out->pixel[1] = kp.pixel.y();
    out->depth_m = kp.depth_m;
    out->has_xyz = kp.xyz_cam.has_value() ? 1 : 0;
    for (int k = 0; k < 3; ++k) out->xyz_cam[k] = kp.xyz_cam ? (*kp.xyz_cam)[k] : 0.0;
    out->lane_id = kp.lane_id.c_str();
  });
}

clinet_status clinet_label_info(const clinet_label* label, const char** frame_id,
                                const char** camera_id, int64_t* timestamp_ns,
                                int32_t dims_out[5]) {
  return Guard([&] {
    Require(label != nullptr, "null argument");
    if (frame_id) *frame_id = label->grid.frame_id.c_str();
    if (camera_id) *camera_id = label->grid.camera_id.c_str();
    if (timestamp_ns) *timestamp_ns = label->grid.timestamp_ns;
    if (dims_out) Dims(label->grid.config, dims_out);
  });
}

void clinet_label_free(clinet_label* label) { delete label; }

// ---- predictions ------------------------------------------------------------

clinet_status clinet_pred_load(const char* manifest_path, int strict, clinet_pred** out) {
  return Guard([&] {
    Require(manifest_path && out, "null argument");
    auto h = std::make_unique<clinet_pred>();
    h->grid = LoadPredictionFrame(manifest_path, Mode(strict));
    *out = h.release();
  });
}

clinet_status clinet_pred_from_label(const clinet_label* label, clinet_pred** out) {
  return Guard([&] {
    Require(label && out, "null argument");
    auto h = std::make_unique<clinet_pred>();
    h->grid = PredictionFromLabel(label->grid);
    *out = h.release();
  });
}

clinet_status clinet_pred_save(const clinet_pred* pred, const char* dir,
                               const char* stem) {
  return Guard([&] {
    Require(pred && dir && stem, "null argument");
    SavePredictionFrame(pred->grid, dir, stem);
  });
}

clinet_status clinet_pred_info(const clinet_pred* pred, const char** frame_id,
                               const char** camera_id, int32_t dims_out[5]) {
  return Guard([&] {
    Require(pred != nullptr, "null argument");
    if (frame_id) *frame_id = pred->grid.frame_id.c_str();
    if (camera_id) *camera_id = pred->grid.camera_id.c_str();
    if (dims_out) Dims(pred->grid.config, dims_out);
  });
}

void clinet_pred_free(clinet_pred* pred) { delete pred; }

clinet_status clinet_decode(const clinet_pred* pred, const clinet_camera* camera,
                            double conf_threshold, int legacy_offset_formula,
                            clinet_label** out) {
  return Guard([&] {
    Require(pred && camera && out, "null argument");
    if (!(conf_threshold > 0.0 && conf_threshold < 1.0)) {
      Fail(ErrorCode::kInvalidArgument, "confidence threshold must lie in (0, 1)");
    }
    DecodeConfig dcfg;
    dcfg.conf_threshold = conf_threshold;
    dcfg.legacy_offset_formula = legacy_offset_formula != 0;
    auto h = std::make_unique<clinet_label>();
    h->grid.config = pred->grid.config;
    h->grid.frame_id = pred->grid.frame_id;
    h->grid.camera_id = pred->grid.camera_id;
    h->grid.keypoints = Decode(pred->grid, FromC(*camera), dcfg);
    *out = h.release();
  });
}

// ---- metrics ----------------------------------------------------------------

clinet_status clinet_f1_from_counts(int64_t tp, int64_t fp, int64_t fn, double out[3]) {
  return Guard([&] {
    Require(out != nullptr, "null argument");
    Require(tp >= 0 && fp >= 0 && fn >= 0, "counts must be non-negative");
    const Scores s = F1FromCounts({tp, fp, fn});
    out[0] = s.precision;
    out[1] = s.recall;
    out[2] = s.f1;
  });
}

double clinet_f1_from_precision_recall(double precision, double recall) {
  return F1FromPrecisionRecall(precision, recall);
}

clinet_status clinet_evaluate_frame(const clinet_label* gt, const clinet_label* pred,
                                    const clinet_eval_config* cfg,
                                    clinet_frame_result** out) {
  return Guard([&] {
    Require(gt && cfg && out, "null argument");
    auto h = std::make_unique<clinet_frame_result>();
    if (pred != nullptr) {
      h->result = EvaluateFrame(gt->grid, pred->grid, FromC(*cfg));
    } else {
      h->result = EvaluateFrame(gt->grid, std::span<const KeyPoint>(), FromC(*cfg));
    }
    *out = h.release();
  });
}

clinet_status clinet_frame_result_counts(const clinet_frame_result* result,
                                         size_t window_index, int64_t counts_out[3]) {
  return Guard([&] {
    Require(result && counts_out, "null argument");
    if (window_index >= result->result.counts.size()) {
      Fail(ErrorCode::kOutOfRange, "window index out of range");
    }
    const Counts& c = result->result.counts[window_index];
    counts_out[0] = c.tp;
    counts_out[1] = c.fp;
    counts_out[2] = c.fn;
  });
}

clinet_status clinet_frame_result_json(const clinet_frame_result* result,
                                       char** json_out) {
  return Guard([&] {
    Require(result && json_out, "null argument");
    *json_out = CopyString(SerializeFrameResult(result->result));
  });
}

void clinet_frame_result_free(clinet_frame_result* result) { delete result; }

clinet_status clinet_aggregate(const clinet_frame_result* const* results, size_t count,
                               const clinet_eval_config* cfg, char** report_json_out) {
  return Guard([&] {
    Require((results || count == 0) && cfg && report_json_out, "null argument");
    std::vector<FrameResult> frames;
    frames.reserve(count);
    for (size_t k = 0; k < count; ++k) {
      Require(results[k] != nullptr, "null frame result");
      frames.push_back(results[k]->result);
    }
    *report_json_out = CopyString(SerializeReport(Aggregate(frames, FromC(*cfg))));
  });
}

// ---- losses -----------------------------------------------------------------

clinet_status clinet_losses_check(const clinet_label* label, const clinet_pred* pred,
                                  double gamma, double out[4]) {
  return Guard([&] {
    Require(label && pred && out, "null argument");
    const LabelGrid& gt = label->grid;
    const PredictionGrid& p = pred->grid;
    if (gt.config.h1 != p.config.h1 || gt.config.w1 != p.config.w1) {
      Fail(ErrorCode::kShapeMismatch,
           "label grid " + std::to_string(gt.config.h1) + "x" +
               std::to_string(gt.config.w1) + " vs prediction grid " +
               std::to_string(p.config.h1) + "x" + std::to_string(p.config.w1));
    }
    const Grid mask = gt.ConfidenceTarget();
    LossParts parts;
    parts.conf = ConfLoss(mask, p.conf);
    parts.offset = OffsetLoss(mask, gt.OffsetTarget(), p.offset);
    parts.depth = DepthLoss(mask, gt.DepthTarget(), p.depth);
    out[0] = parts.conf;
    out[1] = parts.offset;
    out[2] = parts.depth;
    out[3] = TotalLoss(parts, {gamma});
  });
}

// ---- synth ------------------------------------------------------------------

void clinet_scene_spec_default(clinet_scene_spec* spec) {
  if (spec == nullptr) return;
  const SceneSpec d;
  spec->seed = d.seed;
  spec->layout = "straight";
  spec->lane_width_m = d.lane_width_m;
  spec->num_lanes = d.num_lanes;
  spec->trajectory_length_m = d.trajectory_length_m;
  spec->speed_mps = d.speed_mps;
  spec->frame_rate_hz = d.frame_rate_hz;
  spec->num_cameras = 1;
}

clinet_status clinet_synth_generate(const clinet_scene_spec* spec, clinet_map** map_out,
                                    clinet_poses** poses_out, clinet_calib** calib_out,
                                    clinet_frames** frames_out) {
  return Guard([&] {
    Require(spec && spec->layout && map_out && poses_out && calib_out && frames_out,
            "null argument");
    SceneSpec s;
    s.seed = spec->seed;
    s.layout = ParseLayout(spec->layout);
    s.lane_width_m = spec->lane_width_m;
    s.num_lanes = spec->num_lanes;
    s.trajectory_length_m = spec->trajectory_length_m;
    s.speed_mps = spec->speed_mps;
    s.frame_rate_hz = spec->frame_rate_hz;
    s.camera_rig = DefaultCameraRig(spec->num_cameras);
    Scene scene = GenerateScene(s);
    auto map = std::make_unique<clinet_map>();
    auto poses = std::make_unique<clinet_poses>();
    auto calib = std::make_unique<clinet_calib>();
    auto frames = std::make_unique<clinet_frames>();
    map->map = std::move(scene.map);
    poses->track = std::move(scene.poses);
    calib->calib = std::move(scene.calibration);
    frames->frames = std::move(scene.frames);
    *map_out = map.release();
    *poses_out = poses.release();
    *calib_out = calib.release();
    *frames_out = frames.release();
  });
}

clinet_status clinet_render_frame(const clinet_map* map, const clinet_calib* calib,
                                  size_t camera_index, const clinet_poses* poses,
                                  int64_t timestamp_ns, int32_t width, int32_t height,
                                  const char* png_path) {
  return Guard([&] {
    Require(map && calib && poses && png_path, "null argument");
    if (camera_index >= calib->calib.cameras.size()) {
      Fail(ErrorCode::kOutOfRange, "camera index out of range");
    }
    const SE3Pose ego = InterpolatePose(poses->track, timestamp_ns);
    const RgbImage img = RasterizeFrame(map->map, calib->calib.cameras[camera_index].camera,
                                        ego, width, height);
    WriteFile(png_path, EncodePng(img));
  });
}

// ---- tensors / inspect ------------------------------------------------------

clinet_status clinet_tensor_load(const char* path, clinet_tensor** out) {
  return Guard([&] {
    Require(path && out, "null argument");
    auto h = std::make_unique<clinet_tensor>();
    h->blob = ReadTensor(ReadBinaryFile(path));
    *out = h.release();
  });
}

clinet_status clinet_tensor_save(const char* path, const uint32_t* dims, size_t rank,
                                 const float* data) {
  return Guard([&] {
    Require(path && (dims || rank == 0), "null argument");
    TensorBlob blob;
    blob.dims.assign(dims, dims + rank);
    const std::uint64_t n = rank == 0 ? 0 : blob.NumElements();
    Require(data || n == 0, "null tensor data");
    if (rank > 0 && rank <= kMaxTensorRank) blob.data.assign(data, data + n);
    WriteFile(path, WriteTensor(blob));
  });
}

size_t clinet_tensor_rank(const clinet_tensor* tensor) {
  return tensor ? tensor->blob.dims.size() : 0;
}

const uint32_t* clinet_tensor_dims(const clinet_tensor* tensor) {
  return tensor ? tensor->blob.dims.data() : nullptr;
}

const float* clinet_tensor_data(const clinet_tensor* tensor) {
  return tensor ? tensor->blob.data.data() : nullptr;
}

void clinet_tensor_free(clinet_tensor* tensor) { delete tensor; }

clinet_status clinet_inspect(const char* path, char** text_out) {
  return Guard([&] {
    Require(path && text_out, "null argument");
    *text_out = CopyString(InspectFile(path));
  });
}

}  // extern "C"
