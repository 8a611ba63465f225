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

// Exercises the shared library strictly through the C header.
#include <gtest/gtest.h>

#include <cmath>
#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <random>
#include <string>
#include <vector>

#include <unistd.h>

#include "clinet/clinet.h"

namespace {

namespace fs = std::filesystem;

clinet_camera NetCamera() {
  clinet_camera c{};
  c.fx = c.fy = 500.0;
  c.cx = 256.0;
  c.cy = 128.0;
  c.width = 512;
  c.height = 256;
  c.ext_q[0] = 1.0;
  c.crop_w = 512;
  c.crop_h = 256;
  c.scale_x = c.scale_y = 1.0;
  return c;
}

class TempDir {
 public:
  explicit TempDir(const std::string& name)
      : path_(fs::temp_directory_path() /
              ("clinet_capi_" + name + "_" + std::to_string(getpid()))) {
    fs::remove_all(path_);
    fs::create_directories(path_);
  }
  ~TempDir() { fs::remove_all(path_); }
  std::string operator/(const std::string& file) const { return (path_ / file).string(); }

 private:
  fs::path path_;
};

TEST(CApi, StatusNamesAndLastError) {
  EXPECT_STREQ(clinet_status_name(CLINET_OK), "OK");
  EXPECT_STREQ(clinet_status_name(CLINET_ERR_GRID_MISMATCH), "GridMismatch");
  EXPECT_STREQ(clinet_status_name(CLINET_ERR_DIM_OVERFLOW), "DimOverflow");
  const clinet_camera cam = NetCamera();
  const double behind[3] = {0, 0, -1};
  double px[2];
  EXPECT_EQ(clinet_project(&cam, behind, px), CLINET_ERR_BEHIND_CAMERA);
  EXPECT_NE(std::string(clinet_last_error()).find("behind"), std::string::npos);
  EXPECT_EQ(clinet_project(nullptr, behind, px), CLINET_ERR_INVALID_ARGUMENT);
}

TEST(CApi, ProjectUnproject) {
  const clinet_camera cam = NetCamera();
  const double pixel[2] = {0, 0};
  double xyz[3];
  ASSERT_EQ(clinet_unproject(&cam, pixel, 10.0, xyz), CLINET_OK);
  EXPECT_NEAR(xyz[0], -5.12, 1e-12);
  EXPECT_NEAR(xyz[1], -2.56, 1e-12);
  EXPECT_NEAR(xyz[2], 10.0, 1e-12);
  double back[2];
  ASSERT_EQ(clinet_project(&cam, xyz, back), CLINET_OK);
  EXPECT_NEAR(back[0], 0.0, 1e-9);
  EXPECT_NEAR(back[1], 0.0, 1e-9);
  EXPECT_EQ(clinet_unproject(&cam, pixel, 0.0, xyz), CLINET_ERR_NONPOSITIVE_DEPTH);

  clinet_camera raw = NetCamera();
  raw.width = 1024;
  raw.height = 512;
  raw.cx = 512;
  raw.cy = 256;
  raw.crop_w = 1024;
  raw.crop_h = 512;
  raw.scale_x = raw.scale_y = 0.5;
  clinet_camera adj;
  ASSERT_EQ(clinet_adjust_intrinsics(&raw, &adj), CLINET_OK);
  EXPECT_EQ(adj.width, 512);
  EXPECT_EQ(adj.height, 256);
  EXPECT_EQ(adj.fx, 250.0);
  EXPECT_EQ(adj.cx, 256.0);
  EXPECT_EQ(adj.scale_x, 1.0);
}

TEST(CApi, F1Helpers) {
  EXPECT_NEAR(clinet_f1_from_precision_recall(0.822, 0.585), 0.684, 5e-4);
  double s[3];
  ASSERT_EQ(clinet_f1_from_counts(0, 0, 0, s), CLINET_OK);
  EXPECT_EQ(s[2], 0.0);
  ASSERT_EQ(clinet_f1_from_counts(1, 1, 1, s), CLINET_OK);
  EXPECT_DOUBLE_EQ(s[0], 0.5);
  EXPECT_EQ(clinet_f1_from_counts(-1, 0, 0, s), CLINET_ERR_INVALID_ARGUMENT);
}

TEST(CApi, TensorsAndInspect) {
  TempDir dir("tensor");
  const uint32_t dims[2] = {2, 3};
  const float data[6] = {1, 2, 3, 4, 5, 6.5f};
  ASSERT_EQ(clinet_tensor_save((dir / "t.cltn").c_str(), dims, 2, data), CLINET_OK);
  EXPECT_EQ(fs::file_size(dir / "t.cltn"), 8u + 8u + 24u);
  clinet_tensor* t = nullptr;
  ASSERT_EQ(clinet_tensor_load((dir / "t.cltn").c_str(), &t), CLINET_OK);
  ASSERT_EQ(clinet_tensor_rank(t), 2u);
  EXPECT_EQ(clinet_tensor_dims(t)[1], 3u);
  EXPECT_EQ(clinet_tensor_data(t)[5], 6.5f);
  clinet_tensor_free(t);

  char* text = nullptr;
  ASSERT_EQ(clinet_inspect((dir / "t.cltn").c_str(), &text), CLINET_OK);
  EXPECT_NE(std::string(text).find("2"), std::string::npos);
  clinet_string_free(text);

  EXPECT_EQ(clinet_tensor_save((dir / "z.cltn").c_str(), dims, 0, data),
            CLINET_ERR_DIM_OVERFLOW);
  std::FILE* f = std::fopen((dir / "bad.cltn").c_str(), "wb");
  std::fputs("NOPE0000", f);
  std::fclose(f);
  EXPECT_EQ(clinet_tensor_load((dir / "bad.cltn").c_str(), &t), CLINET_ERR_BAD_MAGIC);
  EXPECT_EQ(clinet_tensor_load((dir / "missing.cltn").c_str(), &t), CLINET_ERR_IO);
}

struct SceneHandles {
  clinet_map* map = nullptr;
  clinet_poses* poses = nullptr;
  clinet_calib* calib = nullptr;
  clinet_frames* frames = nullptr;
  ~SceneHandles() {
    clinet_map_free(map);
    clinet_poses_free(poses);
    clinet_calib_free(calib);
    clinet_frames_free(frames);
  }
};

TEST(CApi, SynthLabelDecodeEvaluate) {
  clinet_scene_spec spec;
  clinet_scene_spec_default(&spec);
  spec.layout = "grid_with_intersections";
  spec.num_cameras = 3;
  spec.seed = 9;
  SceneHandles s;
  ASSERT_EQ(clinet_synth_generate(&spec, &s.map, &s.poses, &s.calib, &s.frames), CLINET_OK);
  EXPECT_EQ(clinet_calib_count(s.calib), 3u);
  EXPECT_EQ(clinet_frames_count(s.frames), 130u);
  EXPECT_EQ(clinet_poses_count(s.poses), 131u);
  EXPECT_GT(clinet_map_lane_count(s.map), 4u);

  size_t cam_index = 99;
  ASSERT_EQ(clinet_calib_find(s.calib, "front_center", &cam_index), CLINET_OK);
  EXPECT_EQ(cam_index, 0u);
  EXPECT_EQ(clinet_calib_find(s.calib, "rear", &cam_index), CLINET_ERR_INVALID_ARGUMENT);
  clinet_camera cam;
  ASSERT_EQ(clinet_calib_get(s.calib, 0, &cam), CLINET_OK);

  clinet_label_config cfg;
  clinet_label_config_default(&cfg);
  EXPECT_EQ(cfg.h1, 32);
  EXPECT_EQ(cfg.w0, 512);

  const char* frame_id = nullptr;
  int64_t ts = 0;
  ASSERT_EQ(clinet_frames_get(s.frames, 40, &frame_id, &ts), CLINET_OK);
  clinet_label* label = nullptr;
  ASSERT_EQ(clinet_label_frame(s.map, s.calib, 0, s.poses, frame_id, ts, &cfg, &label),
            CLINET_OK);
  const size_t n = clinet_label_keypoint_count(label);
  ASSERT_GT(n, 0u);
  clinet_camera adj;
  ASSERT_EQ(clinet_adjust_intrinsics(&cam, &adj), CLINET_OK);
  for (size_t k = 0; k < n; ++k) {
    clinet_keypoint kp;
    ASSERT_EQ(clinet_label_keypoint(label, k, &kp), CLINET_OK);
    ASSERT_TRUE(kp.has_xyz);
    double xyz[3];
    ASSERT_EQ(clinet_unproject(&adj, kp.pixel, kp.depth_m, xyz), CLINET_OK);
    for (int c = 0; c < 3; ++c) EXPECT_NEAR(xyz[c], kp.xyz_cam[c], 1e-6);
    EXPECT_NE(std::strlen(kp.lane_id), 0u);
  }
  clinet_keypoint kp;
  EXPECT_EQ(clinet_label_keypoint(label, n, &kp), CLINET_ERR_OUT_OF_RANGE);

  clinet_pred* pred = nullptr;
  ASSERT_EQ(clinet_pred_from_label(label, &pred), CLINET_OK);
  clinet_label* decoded = nullptr;
  ASSERT_EQ(clinet_decode(pred, &cam, 0.5, 0, &decoded), CLINET_OK);
  EXPECT_EQ(clinet_label_keypoint_count(decoded), n);
  EXPECT_EQ(clinet_decode(pred, &cam, 1.5, 0, &decoded), CLINET_ERR_INVALID_ARGUMENT);

  const int32_t windows[3] = {5, 3, 1};
  const clinet_eval_config ecfg{windows, 3, 0};
  clinet_frame_result* result = nullptr;
  ASSERT_EQ(clinet_evaluate_frame(label, decoded, &ecfg, &result), CLINET_OK);
  for (size_t w = 0; w < 3; ++w) {
    int64_t c[3];
    ASSERT_EQ(clinet_frame_result_counts(result, w, c), CLINET_OK);
    EXPECT_EQ(c[0], static_cast<int64_t>(n));
    EXPECT_EQ(c[1], 0);
    EXPECT_EQ(c[2], 0);
  }
  char* json = nullptr;
  ASSERT_EQ(clinet_frame_result_json(result, &json), CLINET_OK);
  EXPECT_EQ(std::string(json).back(), '\n');
  clinet_string_free(json);
  const clinet_frame_result* results[1] = {result};
  ASSERT_EQ(clinet_aggregate(results, 1, &ecfg, &json), CLINET_OK);
  EXPECT_NE(std::string(json).find("\"f1\": 1.0"), std::string::npos) << json;
  EXPECT_NE(std::string(json).find("\"avg_depth_error\": 0.0"), std::string::npos) << json;
  clinet_string_free(json);

  double losses[4];
  ASSERT_EQ(clinet_losses_check(label, pred, 1.0, losses), CLINET_OK);
  for (double v : losses) EXPECT_EQ(v, 0.0);

  const int32_t bad_windows[1] = {4};
  const clinet_eval_config bad{bad_windows, 1, 0};
  clinet_frame_result* none = nullptr;
  EXPECT_EQ(clinet_evaluate_frame(label, decoded, &bad, &none), CLINET_ERR_INVALID_ARGUMENT);

  cfg.h1 = 16;
  cfg.h0 = 128;
  clinet_label* mismatch = nullptr;
  EXPECT_EQ(clinet_label_frame(s.map, s.calib, 0, s.poses, frame_id, ts, &cfg, &mismatch),
            CLINET_ERR_CONFIG_MISMATCH);
  EXPECT_EQ(clinet_label_frame(s.map, s.calib, 0, s.poses, frame_id, 1, &cfg, &mismatch),
            CLINET_ERR_CONFIG_MISMATCH);
  clinet_label_config_default(&cfg);
  EXPECT_EQ(clinet_label_frame(s.map, s.calib, 0, s.poses, frame_id, 1, &cfg, &mismatch),
            CLINET_ERR_OUT_OF_RANGE);

  clinet_frame_result_free(result);
  clinet_label_free(decoded);
  clinet_pred_free(pred);
  clinet_label_free(label);
}

TEST(CApi, FileRoundTrips) {
  TempDir dir("files");
  clinet_scene_spec spec;
  clinet_scene_spec_default(&spec);
  spec.layout = "curve";
  SceneHandles s;
  ASSERT_EQ(clinet_synth_generate(&spec, &s.map, &s.poses, &s.calib, &s.frames), CLINET_OK);
  ASSERT_EQ(clinet_map_save(s.map, (dir / "map.json").c_str()), CLINET_OK);
  ASSERT_EQ(clinet_poses_save(s.poses, (dir / "poses.ndjson").c_str()), CLINET_OK);
  ASSERT_EQ(clinet_calib_save(s.calib, (dir / "calib.json").c_str()), CLINET_OK);
  ASSERT_EQ(clinet_frames_save(s.frames, (dir / "frames.ndjson").c_str()), CLINET_OK);

  SceneHandles l;
  ASSERT_EQ(clinet_map_load((dir / "map.json").c_str(), 1, &l.map), CLINET_OK);
  ASSERT_EQ(clinet_poses_load((dir / "poses.ndjson").c_str(), 1, &l.poses), CLINET_OK);
  ASSERT_EQ(clinet_calib_load((dir / "calib.json").c_str(), 1, &l.calib), CLINET_OK);
  ASSERT_EQ(clinet_frames_load((dir / "frames.ndjson").c_str(), 1, &l.frames), CLINET_OK);
  EXPECT_EQ(clinet_map_lane_count(l.map), clinet_map_lane_count(s.map));
  EXPECT_STREQ(clinet_calib_camera_id(l.calib, 0), "front_center");

  clinet_pose a, b, mid;
  ASSERT_EQ(clinet_poses_get(l.poses, 3, &a), CLINET_OK);
  ASSERT_EQ(clinet_poses_get(l.poses, 4, &b), CLINET_OK);
  ASSERT_EQ(clinet_poses_interpolate(l.poses, a.timestamp_ns, &mid), CLINET_OK);
  EXPECT_EQ(mid.t[0], a.t[0]);
  ASSERT_EQ(clinet_poses_interpolate(l.poses, (a.timestamp_ns + b.timestamp_ns) / 2, &mid),
            CLINET_OK);
  EXPECT_NEAR(mid.t[0], 0.5 * (a.t[0] + b.t[0]), 1e-9);
  EXPECT_EQ(clinet_poses_interpolate(l.poses, 0, &mid), CLINET_ERR_OUT_OF_RANGE);

  const char* fid;
  int64_t ts;
  ASSERT_EQ(clinet_frames_get(l.frames, 0, &fid, &ts), CLINET_OK);
  clinet_label_config cfg;
  clinet_label_config_default(&cfg);
  clinet_label* label = nullptr;
  ASSERT_EQ(clinet_label_frame(l.map, l.calib, 0, l.poses, fid, ts, &cfg, &label), CLINET_OK);
  ASSERT_EQ(clinet_label_save(label, (dir / "label.json").c_str()), CLINET_OK);
  clinet_label* again = nullptr;
  ASSERT_EQ(clinet_label_load((dir / "label.json").c_str(), 1, &again), CLINET_OK);
  EXPECT_EQ(clinet_label_keypoint_count(again), clinet_label_keypoint_count(label));
  const char *f2, *c2;
  int32_t dims[5];
  ASSERT_EQ(clinet_label_info(again, &f2, &c2, &ts, dims), CLINET_OK);
  EXPECT_STREQ(f2, fid);
  EXPECT_STREQ(c2, "front_center");
  EXPECT_EQ(dims[2], 32);
  EXPECT_EQ(dims[4], 8);

  clinet_pred* pred = nullptr;
  ASSERT_EQ(clinet_pred_from_label(label, &pred), CLINET_OK);
  ASSERT_EQ(clinet_pred_save(pred, (dir / "").c_str(), "p"), CLINET_OK);
  clinet_pred* loaded = nullptr;
  ASSERT_EQ(clinet_pred_load((dir / "p.pred.json").c_str(), 1, &loaded), CLINET_OK);
  ASSERT_EQ(clinet_pred_info(loaded, &f2, &c2, dims), CLINET_OK);
  EXPECT_STREQ(f2, fid);
  EXPECT_EQ(dims[3], 64);

  ASSERT_EQ(clinet_render_frame(l.map, l.calib, 0, l.poses, ts, 512, 256,
                                (dir / "img.png").c_str()),
            CLINET_OK);
  EXPECT_GT(fs::file_size(dir / "img.png"), 100u);

  std::FILE* f = std::fopen((dir / "broken.json").c_str(), "w");
  std::fputs("{\"lanes\": [], \"x\": 1}", f);
  std::fclose(f);
  clinet_map* broken = nullptr;
  EXPECT_EQ(clinet_map_load((dir / "broken.json").c_str(), 1, &broken), CLINET_ERR_PARSE);
  ASSERT_EQ(clinet_map_load((dir / "broken.json").c_str(), 0, &broken), CLINET_OK);
  EXPECT_EQ(clinet_map_lane_count(broken), 0u);
  clinet_map_free(broken);

  clinet_scene_spec bad = spec;
  bad.layout = "spiral";
  SceneHandles none;
  EXPECT_EQ(clinet_synth_generate(&bad, &none.map, &none.poses, &none.calib, &none.frames),
            CLINET_ERR_UNSUPPORTED_LAYOUT);

  clinet_pred_free(loaded);
  clinet_pred_free(pred);
  clinet_label_free(again);
  clinet_label_free(label);
}

TEST(CApi, LossesCheckHandExample) {
  // Hand-computed losses for a three-keypoint label against a shifted prediction.
  TempDir dir("losses");
  clinet_scene_spec spec;
  clinet_scene_spec_default(&spec);
  SceneHandles s;
  ASSERT_EQ(clinet_synth_generate(&spec, &s.map, &s.poses, &s.calib, &s.frames), CLINET_OK);
  const char* fid;
  int64_t ts;
  ASSERT_EQ(clinet_frames_get(s.frames, 5, &fid, &ts), CLINET_OK);
  clinet_label_config cfg;
  clinet_label_config_default(&cfg);
  clinet_label* label = nullptr;
  ASSERT_EQ(clinet_label_frame(s.map, s.calib, 0, s.poses, fid, ts, &cfg, &label), CLINET_OK);
  const size_t n = clinet_label_keypoint_count(label);
  ASSERT_GT(n, 0u);

  clinet_pred* pred = nullptr;
  ASSERT_EQ(clinet_pred_from_label(label, &pred), CLINET_OK);
  ASSERT_EQ(clinet_pred_save(pred, (dir / "").c_str(), "p"), CLINET_OK);
  // Overwrite the depth tensor with the label depths plus 2 m on every cell.
  std::vector<float> depth(32 * 64, 2.0f);
  for (size_t k = 0; k < n; ++k) {
    clinet_keypoint kp;
    ASSERT_EQ(clinet_label_keypoint(label, k, &kp), CLINET_OK);
    depth[kp.cell_i * 64 + kp.cell_j] = static_cast<float>(kp.depth_m) + 2.0f;
  }
  const uint32_t dims[2] = {32, 64};
  ASSERT_EQ(clinet_tensor_save((dir / "p.depth.cltn").c_str(), dims, 2, depth.data()),
            CLINET_OK);
  clinet_pred* loaded = nullptr;
  ASSERT_EQ(clinet_pred_load((dir / "p.pred.json").c_str(), 1, &loaded), CLINET_OK);
  double out[4];
  ASSERT_EQ(clinet_losses_check(label, loaded, 0.5, out), CLINET_OK);
  EXPECT_EQ(out[0], 0.0);
  EXPECT_NEAR(out[1], 0.0, 1e-12);  // offsets pass through f32
  EXPECT_NEAR(out[2], 4.0, 1e-4);
  EXPECT_NEAR(out[3], 2.0, 5e-5);
  clinet_pred_free(loaded);
  clinet_pred_free(pred);
  clinet_label_free(label);
}

}  // namespace
