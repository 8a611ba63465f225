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

/* C interface to the clinet-bench core library.
 *
 * Objects are opaque handles created by *_load / *_create style calls and
 * released with the matching *_free. Every fallible call returns a
 * clinet_status; on failure clinet_last_error() describes the problem for
 * the calling thread. Handles are immutable after construction and may be
 * shared across threads. Strings returned through char** out-parameters are
 * owned by the caller and released with clinet_string_free(); const char*
 * results are borrowed from the handle that produced them.
 */
#ifndef CLINET_CLINET_H_
#define CLINET_CLINET_H_

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define CLINET_API __declspec(dllexport)
#else
#define CLINET_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum clinet_status {
  CLINET_OK = 0,
  CLINET_ERR_INVALID_ARGUMENT = 1,
  CLINET_ERR_PARSE = 2,
  CLINET_ERR_INVARIANT = 3,
  CLINET_ERR_IO = 4,
  CLINET_ERR_BEHIND_CAMERA = 5,
  CLINET_ERR_NONPOSITIVE_DEPTH = 6,
  CLINET_ERR_OUT_OF_RANGE = 7,
  CLINET_ERR_EMPTY_TRACK = 8,
  CLINET_ERR_CONFIG_MISMATCH = 9,
  CLINET_ERR_PIXEL_OUT_OF_BOUNDS = 10,
  CLINET_ERR_SHAPE_MISMATCH = 11,
  CLINET_ERR_GRID_MISMATCH = 12,
  CLINET_ERR_BAD_MAGIC = 13,
  CLINET_ERR_UNSUPPORTED_VERSION = 14,
  CLINET_ERR_TRUNCATED_PAYLOAD = 15,
  CLINET_ERR_DIM_OVERFLOW = 16,
  CLINET_ERR_UNSUPPORTED_LAYOUT = 17,
  CLINET_ERR_INTERNAL = 99
} clinet_status;

CLINET_API const char* clinet_status_name(clinet_status status);
CLINET_API const char* clinet_last_error(void);
CLINET_API void clinet_string_free(char* str);

/* ---- plain value types ------------------------------------------------- */

/* Pinhole camera; extrinsic is the camera pose in the ego frame, q = (w,x,y,z). */
typedef struct clinet_camera {
  double fx, fy, cx, cy;
  int32_t width, height;
  double ext_t[3];
  double ext_q[4];
  int32_t crop_x0, crop_y0, crop_w, crop_h;
  double scale_x, scale_y;
} clinet_camera;

typedef struct clinet_pose {
  int64_t timestamp_ns;
  double t[3];
  double q[4]; /* w, x, y, z */
} clinet_pose;

typedef struct clinet_label_config {
  int32_t h0, w0, h1, w1, s;
  double max_depth_m;
  int32_t min_points_per_segment;
  double min_pixel_spacing;
  double resample_spacing_m;
  double min_segment_length_m;
  double horizon_radius_m;
} clinet_label_config;

CLINET_API void clinet_label_config_default(clinet_label_config* cfg);

typedef struct clinet_keypoint {
  int32_t cell_i, cell_j;
  double offset[2];
  double pixel[2];
  double depth_m;
  int32_t has_xyz;
  double xyz_cam[3];
  const char* lane_id; /* borrowed from the owning label */
} clinet_keypoint;

/* ---- geometry ---------------------------------------------------------- */

CLINET_API clinet_status clinet_project(const clinet_camera* camera,
                                        const double p_cam[3],
                                        double pixel_out[2]);
CLINET_API clinet_status clinet_unproject(const clinet_camera* camera,
                                          const double pixel[2], double depth_z,
                                          double p_cam_out[3]);
CLINET_API clinet_status clinet_adjust_intrinsics(const clinet_camera* camera,
                                                  clinet_camera* out);

/* ---- vector maps ------------------------------------------------------- */

typedef struct clinet_map clinet_map;

CLINET_API clinet_status clinet_map_load(const char* path, int strict,
                                         clinet_map** out);
CLINET_API clinet_status clinet_map_save(const clinet_map* map, const char* path);
CLINET_API size_t clinet_map_lane_count(const clinet_map* map);
CLINET_API void clinet_map_free(clinet_map* map);

/* ---- pose tracks ------------------------------------------------------- */

typedef struct clinet_poses clinet_poses;

CLINET_API clinet_status clinet_poses_load(const char* path, int strict,
                                           clinet_poses** out);
CLINET_API clinet_status clinet_poses_save(const clinet_poses* poses,
                                           const char* path);
CLINET_API size_t clinet_poses_count(const clinet_poses* poses);
CLINET_API clinet_status clinet_poses_get(const clinet_poses* poses,
                                          size_t index, clinet_pose* out);
CLINET_API clinet_status clinet_poses_interpolate(const clinet_poses* poses,
                                                  int64_t t_ns,
                                                  clinet_pose* out);
CLINET_API void clinet_poses_free(clinet_poses* poses);

/* ---- calibration ------------------------------------------------------- */

typedef struct clinet_calib clinet_calib;

CLINET_API clinet_status clinet_calib_load(const char* path, int strict,
                                           clinet_calib** out);
CLINET_API clinet_status clinet_calib_save(const clinet_calib* calib,
                                           const char* path);
CLINET_API size_t clinet_calib_count(const clinet_calib* calib);
CLINET_API const char* clinet_calib_camera_id(const clinet_calib* calib,
                                              size_t index);
CLINET_API clinet_status clinet_calib_get(const clinet_calib* calib,
                                          size_t index, clinet_camera* out);
CLINET_API clinet_status clinet_calib_find(const clinet_calib* calib,
                                           const char* camera_id,
                                           size_t* index_out);
CLINET_API void clinet_calib_free(clinet_calib* calib);

/* ---- frame lists (NDJSON {"frame_id", "timestamp_ns"}) ----------------- */

typedef struct clinet_frames clinet_frames;

CLINET_API clinet_status clinet_frames_load(const char* path, int strict,
                                            clinet_frames** out);
CLINET_API clinet_status clinet_frames_save(const clinet_frames* frames,
                                            const char* path);
CLINET_API size_t clinet_frames_count(const clinet_frames* frames);
CLINET_API clinet_status clinet_frames_get(const clinet_frames* frames,
                                           size_t index,
                                           const char** frame_id,
                                           int64_t* timestamp_ns);
CLINET_API void clinet_frames_free(clinet_frames* frames);

/* ---- labels ------------------------------------------------------------ */

typedef struct clinet_label clinet_label;

CLINET_API clinet_status clinet_label_frame(
    const clinet_map* map, const clinet_calib* calib, size_t camera_index,
    const clinet_poses* poses, const char* frame_id, int64_t timestamp_ns,
    const clinet_label_config* cfg, clinet_label** out);
CLINET_API clinet_status clinet_label_load(const char* path, int strict,
                                           clinet_label** out);
CLINET_API clinet_status clinet_label_save(const clinet_label* label,
                                           const char* path);
CLINET_API size_t clinet_label_keypoint_count(const clinet_label* label);
CLINET_API clinet_status clinet_label_keypoint(const clinet_label* label,
                                               size_t index,
                                               clinet_keypoint* out);
/* dims_out receives h0, w0, h1, w1, s. Any out pointer may be NULL. */
CLINET_API clinet_status clinet_label_info(const clinet_label* label,
                                           const char** frame_id,
                                           const char** camera_id,
                                           int64_t* timestamp_ns,
                                           int32_t dims_out[5]);
CLINET_API void clinet_label_free(clinet_label* label);

/* ---- prediction frames and decoding ------------------------------------ */

typedef struct clinet_pred clinet_pred;

CLINET_API clinet_status clinet_pred_load(const char* manifest_path, int strict,
                                          clinet_pred** out);
/* Prediction equal to the label's own dense targets. */
CLINET_API clinet_status clinet_pred_from_label(const clinet_label* label,
                                                clinet_pred** out);
/* Writes {stem}.conf/.offset/.depth.cltn and {stem}.pred.json into dir. */
CLINET_API clinet_status clinet_pred_save(const clinet_pred* pred,
                                          const char* dir, const char* stem);
CLINET_API clinet_status clinet_pred_info(const clinet_pred* pred,
                                          const char** frame_id,
                                          const char** camera_id,
                                          int32_t dims_out[5]);
CLINET_API void clinet_pred_free(clinet_pred* pred);

/* Decoded key-points are returned as a label handle (lane ids empty). */
CLINET_API clinet_status clinet_decode(const clinet_pred* pred,
                                       const clinet_camera* camera,
                                       double conf_threshold,
                                       int legacy_offset_formula,
                                       clinet_label** out);

/* ---- metrics ----------------------------------------------------------- */

typedef struct clinet_eval_config {
  const int32_t* window_sizes;
  size_t num_windows;
  int32_t per_frame_average; /* 0: pooled counts, 1: mean of frame ratios */
} clinet_eval_config;

typedef struct clinet_frame_result clinet_frame_result;

CLINET_API clinet_status clinet_f1_from_counts(int64_t tp, int64_t fp,
                                               int64_t fn, double out[3]);
CLINET_API double clinet_f1_from_precision_recall(double precision,
                                                  double recall);

/* pred may be NULL (no predictions for this frame). */
CLINET_API clinet_status clinet_evaluate_frame(const clinet_label* gt,
                                               const clinet_label* pred,
                                               const clinet_eval_config* cfg,
                                               clinet_frame_result** out);
/* counts_out receives tp, fp, fn for the given window index. */
CLINET_API clinet_status clinet_frame_result_counts(
    const clinet_frame_result* result, size_t window_index,
    int64_t counts_out[3]);
CLINET_API clinet_status clinet_frame_result_json(
    const clinet_frame_result* result, char** json_out);
CLINET_API void clinet_frame_result_free(clinet_frame_result* result);

/* Pooled report JSON over all results (any order gives identical output). */
CLINET_API clinet_status clinet_aggregate(
    const clinet_frame_result* const* results, size_t count,
    const clinet_eval_config* cfg, char** report_json_out);

/* ---- losses ------------------------------------------------------------ */

/* out receives l_conf, l_offset, l_depth, l_total. */
CLINET_API clinet_status clinet_losses_check(const clinet_label* label,
                                             const clinet_pred* pred,
                                             double gamma, double out[4]);

/* ---- synthetic scenes -------------------------------------------------- */

typedef struct clinet_scene_spec {
  uint64_t seed;
  const char* layout; /* straight | curve | grid_with_intersections */
  double lane_width_m;
  int32_t num_lanes;
  double trajectory_length_m;
  double speed_mps;
  double frame_rate_hz;
  int32_t num_cameras; /* 1 or 3 */
} clinet_scene_spec;

CLINET_API void clinet_scene_spec_default(clinet_scene_spec* spec);
CLINET_API clinet_status clinet_synth_generate(const clinet_scene_spec* spec,
                                               clinet_map** map_out,
                                               clinet_poses** poses_out,
                                               clinet_calib** calib_out,
                                               clinet_frames** frames_out);
/* Renders camera `camera_index` at the interpolated ego pose and writes a
 * PNG to png_path. */
CLINET_API clinet_status clinet_render_frame(const clinet_map* map,
                                             const clinet_calib* calib,
                                             size_t camera_index,
                                             const clinet_poses* poses,
                                             int64_t timestamp_ns,
                                             int32_t width, int32_t height,
                                             const char* png_path);

/* ---- tensors and inspection ------------------------------------------- */

typedef struct clinet_tensor clinet_tensor;

CLINET_API clinet_status clinet_tensor_load(const char* path,
                                            clinet_tensor** out);
CLINET_API clinet_status clinet_tensor_save(const char* path,
                                            const uint32_t* dims, size_t rank,
                                            const float* data);
CLINET_API size_t clinet_tensor_rank(const clinet_tensor* tensor);
CLINET_API const uint32_t* clinet_tensor_dims(const clinet_tensor* tensor);
CLINET_API const float* clinet_tensor_data(const clinet_tensor* tensor);
CLINET_API void clinet_tensor_free(clinet_tensor* tensor);

/* Human-readable summary of any artifact (detected from content). */
CLINET_API clinet_status clinet_inspect(const char* path, char** text_out);

#ifdef __cplusplus
}  // extern "C"
#endif

#endif  // CLINET_CLINET_H_
