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

// clinet-bench: synthesize scenes, auto-label them, decode prediction frames
// and score predictions against labels. Built on the C interface only.

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <tuple>
#include <vector>

#include <nlohmann/json.hpp>

#include "CLI11.hpp"
#include "clinet/clinet.h"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

// Data error: reported with a diagnostic, exit status 1.
class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Usage error discovered after argument parsing: exit status 2.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

void Check(clinet_status status, const std::string& context) {
  if (status == CLINET_OK) return;
  throw DataError(context + ": " + clinet_status_name(status) + ": " +
                  clinet_last_error());
}

template <typename T, void (*Free)(T*)>
struct Handle {
  T* ptr = nullptr;
  Handle() = default;
  Handle(const Handle&) = delete;
  Handle& operator=(const Handle&) = delete;
  Handle(Handle&& o) noexcept : ptr(o.ptr) { o.ptr = nullptr; }
  Handle& operator=(Handle&& o) noexcept {
    std::swap(ptr, o.ptr);
    return *this;
  }
  ~Handle() {
    if (ptr) Free(ptr);
  }
  T** out() { return &ptr; }
  T* get() const { return ptr; }
};

using MapH = Handle<clinet_map, clinet_map_free>;
using PosesH = Handle<clinet_poses, clinet_poses_free>;
using CalibH = Handle<clinet_calib, clinet_calib_free>;
using FramesH = Handle<clinet_frames, clinet_frames_free>;
using LabelH = Handle<clinet_label, clinet_label_free>;
using PredH = Handle<clinet_pred, clinet_pred_free>;
using ResultH = Handle<clinet_frame_result, clinet_frame_result_free>;

std::string TakeString(char* s) {
  std::string out(s ? s : "");
  clinet_string_free(s);
  return out;
}

void WriteText(const fs::path& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  f << text;
  if (!f) throw DataError("cannot write " + path.string());
}

// ---- settings ---------------------------------------------------------------

struct Settings {
  clinet_label_config label{};
  int frame_stride = 1;
  int workers = 1;
  double conf_threshold = 0.5;
  std::vector<int32_t> windows = {5, 3, 1};
  double gamma = 1.0;
  bool per_frame_average = false;
  bool legacy_offset = false;
};

int DefaultWorkers() {
  if (const char* env = std::getenv("CLINET_BENCH_WORKERS")) {
    try {
      const int n = std::stoi(env);
      if (n >= 1) return n;
    } catch (const std::exception&) {
    }
    throw UsageError(std::string("CLINET_BENCH_WORKERS must be a positive integer, got '") +
                     env + "'");
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(std::min(hw, 16u));
}

std::vector<int32_t> ParseWindows(const std::string& text) {
  std::vector<int32_t> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      const int n = std::stoi(item, &used);
      if (used != item.size()) throw std::invalid_argument(item);
      out.push_back(n);
    } catch (const std::exception&) {
      throw UsageError("--windows expects comma-separated odd integers, got '" + text + "'");
    }
  }
  if (out.empty()) throw UsageError("--windows must list at least one window size");
  for (int n : out) {
    if (n < 1 || n % 2 == 0) throw UsageError("window sizes must be odd and >= 1");
  }
  return out;
}

// Applies a JSON config file; keys mirror the flag names with underscores.
void ApplyConfigFile(const fs::path& path, Settings& s) {
  std::ifstream f(path);
  if (!f) throw UsageError("cannot open config " + path.string());
  json doc;
  try {
    doc = json::parse(f);
  } catch (const json::exception& e) {
    throw DataError("config " + path.string() + ": " + e.what());
  }
  if (!doc.is_object()) throw DataError("config " + path.string() + ": expected an object");
  try {
    for (auto it = doc.begin(); it != doc.end(); ++it) {
      const std::string& k = it.key();
      const json& v = it.value();
      if (k == "h0") s.label.h0 = v.get<int32_t>();
      else if (k == "w0") s.label.w0 = v.get<int32_t>();
      else if (k == "h1") s.label.h1 = v.get<int32_t>();
      else if (k == "w1") s.label.w1 = v.get<int32_t>();
      else if (k == "s") s.label.s = v.get<int32_t>();
      else if (k == "max_depth_m") s.label.max_depth_m = v.get<double>();
      else if (k == "min_points_per_segment") s.label.min_points_per_segment = v.get<int32_t>();
      else if (k == "min_pixel_spacing") s.label.min_pixel_spacing = v.get<double>();
      else if (k == "resample_spacing_m") s.label.resample_spacing_m = v.get<double>();
      else if (k == "min_segment_length_m") s.label.min_segment_length_m = v.get<double>();
      else if (k == "horizon_radius_m") s.label.horizon_radius_m = v.get<double>();
      else if (k == "frame_stride") s.frame_stride = v.get<int>();
      else if (k == "workers") s.workers = v.get<int>();
      else if (k == "conf_threshold") s.conf_threshold = v.get<double>();
      else if (k == "windows") s.windows = v.get<std::vector<int32_t>>();
      else if (k == "gamma") s.gamma = v.get<double>();
      else if (k == "per_frame_average") s.per_frame_average = v.get<bool>();
      else if (k == "legacy_offset_formula") s.legacy_offset = v.get<bool>();
      else throw DataError("config " + path.string() + ": unknown key '" + k + "'");
    }
  } catch (const json::exception& e) {
    throw DataError("config " + path.string() + ": " + e.what());
  }
}

// Shared options with "flags win over --config" resolution.
struct CommonFlags {
  std::string config;
  int frame_stride = 0;
  int workers = 0;
  double conf_threshold = 0.5;
  std::string windows;
  double gamma = 1.0;
  CLI::Option* stride_opt = nullptr;
  CLI::Option* workers_opt = nullptr;
  CLI::Option* thr_opt = nullptr;
  CLI::Option* windows_opt = nullptr;
  CLI::Option* gamma_opt = nullptr;

  void AddConfig(CLI::App* app) {
    app->add_option("--config", config, "JSON config file; explicit flags take precedence")
        ->check(CLI::ExistingFile);
  }
  void AddStride(CLI::App* app, int default_stride) {
    frame_stride = default_stride;
    stride_opt = app->add_option("--frame-stride", frame_stride,
                                 "keep every k-th frame by sorted frame_id")
                     ->check(CLI::PositiveNumber);
  }
  void AddWorkers(CLI::App* app) {
    workers_opt = app->add_option("--workers", workers,
                                  "worker threads (default: $CLINET_BENCH_WORKERS)")
                      ->check(CLI::PositiveNumber);
  }
  void AddThreshold(CLI::App* app) {
    thr_opt = app->add_option("--conf-threshold", conf_threshold,
                              "confidence threshold for decoding")
                  ->check(CLI::Range(0.0, 1.0));
  }
  void AddWindows(CLI::App* app) {
    windows_opt = app->add_option("--windows", windows, "window sizes, e.g. 5,3,1");
  }
  void AddGamma(CLI::App* app) {
    gamma_opt = app->add_option("--gamma", gamma, "depth loss weight");
  }

  Settings Resolve() const {
    Settings s;
    clinet_label_config_default(&s.label);
    if (stride_opt) s.frame_stride = frame_stride;
    s.workers = 0;
    if (!config.empty()) ApplyConfigFile(config, s);
    if (stride_opt && stride_opt->count() > 0) s.frame_stride = frame_stride;
    if (workers_opt && workers_opt->count() > 0) s.workers = workers;
    if (thr_opt && thr_opt->count() > 0) s.conf_threshold = conf_threshold;
    if (windows_opt && windows_opt->count() > 0) s.windows = ParseWindows(windows);
    if (gamma_opt && gamma_opt->count() > 0) s.gamma = gamma;
    if (s.workers <= 0) s.workers = DefaultWorkers();
    if (s.frame_stride < 1) throw UsageError("frame stride must be >= 1");
    if (!(s.conf_threshold > 0.0 && s.conf_threshold < 1.0)) {
      throw UsageError("confidence threshold must lie in (0, 1)");
    }
    for (int n : s.windows) {
      if (n < 1 || n % 2 == 0) throw UsageError("window sizes must be odd and >= 1");
    }
    if (s.windows.empty()) throw UsageError("at least one window size is required");
    return s;
  }
};

// ---- worker pool ------------------------------------------------------------

// Runs job(0..count-1) on `workers` threads with dynamic dispatch. If any job
// fails, the failure with the lowest index is rethrown so diagnostics do not
// depend on scheduling.
void ParallelFor(std::size_t count, int workers, const std::function<void(std::size_t)>& job) {
  std::atomic<std::size_t> next{0};
  std::mutex mu;
  std::size_t failed_index = count;
  std::exception_ptr failure;
  auto run = [&] {
    for (;;) {
      const std::size_t k = next.fetch_add(1);
      if (k >= count) return;
      try {
        job(k);
      } catch (...) {
        std::lock_guard<std::mutex> lock(mu);
        if (k < failed_index) {
          failed_index = k;
          failure = std::current_exception();
        }
      }
    }
  };
  const int n = static_cast<int>(std::min<std::size_t>(std::max(workers, 1), std::max<std::size_t>(count, 1)));
  std::vector<std::thread> threads;
  for (int t = 1; t < n; ++t) threads.emplace_back(run);
  run();
  for (std::thread& t : threads) t.join();
  if (failure) std::rethrow_exception(failure);
}

// ---- corpus helpers -----------------------------------------------------------

struct FrameRef {
  std::string frame_id;
  int64_t timestamp_ns = 0;
};

std::vector<FrameRef> LoadFrames(const fs::path& path) {
  FramesH frames;
  Check(clinet_frames_load(path.c_str(), 0, frames.out()), path.string());
  std::vector<FrameRef> out(clinet_frames_count(frames.get()));
  for (std::size_t k = 0; k < out.size(); ++k) {
    const char* id = nullptr;
    Check(clinet_frames_get(frames.get(), k, &id, &out[k].timestamp_ns), path.string());
    out[k].frame_id = id;
  }
  return out;
}

// Every stride-th distinct frame id in sorted order.
std::vector<std::string> StrideFrameIds(std::vector<std::string> ids, int stride) {
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  std::vector<std::string> kept;
  for (std::size_t k = 0; k < ids.size(); k += static_cast<std::size_t>(stride)) {
    kept.push_back(ids[k]);
  }
  return kept;
}

std::string Stem(const std::string& frame_id, const std::string& camera_id) {
  return frame_id + "_" + camera_id;
}

bool EndsWith(const std::string& s, const std::string& suffix) {
  return s.size() >= suffix.size() &&
         s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

std::vector<fs::path> ListFiles(const fs::path& dir, const std::string& suffix,
                                const std::string& exclude_suffix = "") {
  if (!fs::is_directory(dir)) throw UsageError(dir.string() + " is not a directory");
  std::vector<fs::path> out;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (!entry.is_regular_file()) continue;
    const std::string name = entry.path().filename().string();
    if (!EndsWith(name, suffix)) continue;
    if (!exclude_suffix.empty() && EndsWith(name, exclude_suffix)) continue;
    out.push_back(entry.path());
  }
  std::sort(out.begin(), out.end());
  return out;
}

clinet_camera CameraById(const clinet_calib* calib, const std::string& camera_id) {
  std::size_t index = 0;
  Check(clinet_calib_find(calib, camera_id.c_str(), &index), "calibration");
  clinet_camera cam{};
  Check(clinet_calib_get(calib, index, &cam), "calibration");
  return cam;
}

void EnsureDir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw DataError("cannot create directory " + dir.string() + ": " + ec.message());
}

// ---- synth --------------------------------------------------------------------

struct SynthArgs {
  uint64_t seed = 0;
  std::string layout = "straight";
  std::string out;
  int cameras = 1;
  int num_lanes = 2;
  double lane_width = 3.5;
  double length = 130.0;
  double speed = 10.0;
  double rate = 10.0;
  bool no_images = false;
};

int CmdSynth(const SynthArgs& a, const CommonFlags& common) {
  const Settings settings = common.Resolve();
  clinet_scene_spec spec;
  clinet_scene_spec_default(&spec);
  spec.seed = a.seed;
  spec.layout = a.layout.c_str();
  spec.num_cameras = a.cameras;
  spec.num_lanes = a.num_lanes;
  spec.lane_width_m = a.lane_width;
  spec.trajectory_length_m = a.length;
  spec.speed_mps = a.speed;
  spec.frame_rate_hz = a.rate;

  MapH map;
  PosesH poses;
  CalibH calib;
  FramesH frames;
  const clinet_status st =
      clinet_synth_generate(&spec, map.out(), poses.out(), calib.out(), frames.out());
  if (st == CLINET_ERR_UNSUPPORTED_LAYOUT || st == CLINET_ERR_INVALID_ARGUMENT) {
    throw UsageError(std::string("synth: ") + clinet_last_error());
  }
  Check(st, "synth");

  const fs::path out(a.out);
  EnsureDir(out);
  Check(clinet_map_save(map.get(), (out / "map.json").c_str()), "map.json");
  Check(clinet_poses_save(poses.get(), (out / "poses.ndjson").c_str()), "poses.ndjson");
  Check(clinet_calib_save(calib.get(), (out / "calib.json").c_str()), "calib.json");
  Check(clinet_frames_save(frames.get(), (out / "frames.ndjson").c_str()), "frames.ndjson");

  const std::size_t num_frames = clinet_frames_count(frames.get());
  const std::size_t num_cams = clinet_calib_count(calib.get());
  if (!a.no_images) {
    const fs::path img_dir = out / "images";
    EnsureDir(img_dir);
    ParallelFor(num_frames * num_cams, settings.workers, [&](std::size_t job) {
      const std::size_t f = job / num_cams;
      const std::size_t c = job % num_cams;
      const char* frame_id = nullptr;
      int64_t t_ns = 0;
      Check(clinet_frames_get(frames.get(), f, &frame_id, &t_ns), "frames");
      clinet_camera raw{};
      Check(clinet_calib_get(calib.get(), c, &raw), "calibration");
      clinet_camera adj{};
      Check(clinet_adjust_intrinsics(&raw, &adj), "calibration");
      const std::string name =
          Stem(frame_id, clinet_calib_camera_id(calib.get(), c)) + ".png";
      Check(clinet_render_frame(map.get(), calib.get(), c, poses.get(), t_ns, adj.width,
                                adj.height, (img_dir / name).c_str()),
            name);
    });
  }
  std::cout << "synth: " << clinet_map_lane_count(map.get()) << " lanes, "
            << clinet_poses_count(poses.get()) << " poses, " << num_frames << " frames x "
            << num_cams << " cameras -> " << out.string() << "\n";
  return 0;
}

// ---- label --------------------------------------------------------------------

struct LabelArgs {
  std::string map, poses, calib, frames, out, pred_out;
};

int CmdLabel(const LabelArgs& a, const CommonFlags& common) {
  const Settings s = common.Resolve();
  fs::path frames_path = a.frames;
  if (frames_path.empty()) frames_path = fs::path(a.poses).parent_path() / "frames.ndjson";
  if (!fs::exists(frames_path)) {
    throw UsageError("no frame list: pass --frames (looked for " + frames_path.string() + ")");
  }

  MapH map;
  PosesH poses;
  CalibH calib;
  Check(clinet_map_load(a.map.c_str(), 0, map.out()), a.map);
  Check(clinet_poses_load(a.poses.c_str(), 0, poses.out()), a.poses);
  Check(clinet_calib_load(a.calib.c_str(), 0, calib.out()), a.calib);
  const std::vector<FrameRef> frames = LoadFrames(frames_path);

  std::map<std::string, int64_t> ts;
  std::vector<std::string> ids;
  for (const FrameRef& f : frames) {
    if (!ts.emplace(f.frame_id, f.timestamp_ns).second) {
      throw DataError(frames_path.string() + ": duplicate frame_id '" + f.frame_id + "'");
    }
    ids.push_back(f.frame_id);
  }
  const std::vector<std::string> kept = StrideFrameIds(ids, s.frame_stride);
  const std::size_t num_cams = clinet_calib_count(calib.get());

  const fs::path out(a.out);
  EnsureDir(out);
  if (!a.pred_out.empty()) EnsureDir(a.pred_out);
  std::atomic<std::int64_t> total_keypoints{0};
  ParallelFor(kept.size() * num_cams, s.workers, [&](std::size_t job) {
    const std::string& frame_id = kept[job / num_cams];
    const std::size_t c = job % num_cams;
    const std::string stem = Stem(frame_id, clinet_calib_camera_id(calib.get(), c));
    LabelH label;
    Check(clinet_label_frame(map.get(), calib.get(), c, poses.get(), frame_id.c_str(),
                             ts.at(frame_id), &s.label, label.out()),
          stem);
    Check(clinet_label_save(label.get(), (out / (stem + ".json")).c_str()), stem);
    total_keypoints += static_cast<std::int64_t>(clinet_label_keypoint_count(label.get()));
    if (!a.pred_out.empty()) {
      PredH pred;
      Check(clinet_pred_from_label(label.get(), pred.out()), stem);
      Check(clinet_pred_save(pred.get(), a.pred_out.c_str(), stem.c_str()), stem);
    }
  });
  std::cout << "label: " << kept.size() * num_cams << " label files, " << total_keypoints
            << " keypoints -> " << out.string() << "\n";
  return 0;
}

// ---- decode -------------------------------------------------------------------

struct DecodeArgs {
  std::string pred, calib, out;
  bool legacy = false;
};

std::vector<fs::path> ManifestList(const fs::path& pred) {
  if (fs::is_regular_file(pred)) return {pred};
  return ListFiles(pred, ".pred.json");
}

int CmdDecode(const DecodeArgs& a, const CommonFlags& common) {
  Settings s = common.Resolve();
  if (a.legacy) s.legacy_offset = true;
  CalibH calib;
  Check(clinet_calib_load(a.calib.c_str(), 0, calib.out()), a.calib);
  const std::vector<fs::path> manifests = ManifestList(a.pred);
  const fs::path out(a.out);
  EnsureDir(out);
  ParallelFor(manifests.size(), s.workers, [&](std::size_t k) {
    PredH pred;
    Check(clinet_pred_load(manifests[k].c_str(), 1, pred.out()), manifests[k].string());
    const char* frame_id = nullptr;
    const char* camera_id = nullptr;
    Check(clinet_pred_info(pred.get(), &frame_id, &camera_id, nullptr), manifests[k].string());
    const clinet_camera cam = CameraById(calib.get(), camera_id);
    LabelH decoded;
    Check(clinet_decode(pred.get(), &cam, s.conf_threshold, s.legacy_offset ? 1 : 0,
                        decoded.out()),
          manifests[k].string());
    const std::string stem = Stem(frame_id, camera_id);
    Check(clinet_label_save(decoded.get(), (out / (stem + ".json")).c_str()), stem);
  });
  std::cout << "decode: " << manifests.size() << " prediction frames -> " << out.string()
            << "\n";
  return 0;
}

// ---- eval ---------------------------------------------------------------------

struct EvalArgs {
  std::string gt, pred, calib, out;
  bool per_frame_average = false;
  bool legacy = false;
};

struct GtEntry {
  fs::path path;
  LabelH label;
  std::string frame_id, camera_id;
};

int CmdEval(const EvalArgs& a, const CommonFlags& common) {
  Settings s = common.Resolve();
  if (a.per_frame_average) s.per_frame_average = true;
  if (a.legacy) s.legacy_offset = true;

  const std::vector<fs::path> gt_files = ListFiles(a.gt, ".json", ".pred.json");
  std::vector<GtEntry> gt(gt_files.size());
  ParallelFor(gt.size(), s.workers, [&](std::size_t k) {
    gt[k].path = gt_files[k];
    Check(clinet_label_load(gt_files[k].c_str(), 1, gt[k].label.out()), gt_files[k].string());
    const char* f = nullptr;
    const char* c = nullptr;
    Check(clinet_label_info(gt[k].label.get(), &f, &c, nullptr, nullptr), gt_files[k].string());
    gt[k].frame_id = f;
    gt[k].camera_id = c;
  });
  std::sort(gt.begin(), gt.end(), [](const GtEntry& x, const GtEntry& y) {
    return std::tie(x.frame_id, x.camera_id) < std::tie(y.frame_id, y.camera_id);
  });
  for (std::size_t k = 1; k < gt.size(); ++k) {
    if (gt[k].frame_id == gt[k - 1].frame_id && gt[k].camera_id == gt[k - 1].camera_id) {
      throw DataError("duplicate ground truth for " + Stem(gt[k].frame_id, gt[k].camera_id));
    }
  }
  std::vector<std::string> ids;
  for (const GtEntry& e : gt) ids.push_back(e.frame_id);
  const std::vector<std::string> kept_ids = StrideFrameIds(ids, s.frame_stride);
  std::vector<const GtEntry*> selected;
  for (const GtEntry& e : gt) {
    if (std::binary_search(kept_ids.begin(), kept_ids.end(), e.frame_id)) selected.push_back(&e);
  }

  CalibH calib;
  if (!a.calib.empty()) Check(clinet_calib_load(a.calib.c_str(), 0, calib.out()), a.calib);

  clinet_eval_config cfg{s.windows.data(), s.windows.size(), s.per_frame_average ? 1 : 0};
  const fs::path pred_dir(a.pred);
  if (!fs::is_directory(pred_dir)) throw UsageError(a.pred + " is not a directory");
  std::vector<ResultH> results(selected.size());
  ParallelFor(selected.size(), s.workers, [&](std::size_t k) {
    const GtEntry& e = *selected[k];
    const std::string stem = Stem(e.frame_id, e.camera_id);
    const fs::path label_path = pred_dir / (stem + ".json");
    const fs::path manifest_path = pred_dir / (stem + ".pred.json");
    LabelH pred;
    if (fs::exists(label_path)) {
      Check(clinet_label_load(label_path.c_str(), 1, pred.out()), label_path.string());
    } else if (fs::exists(manifest_path)) {
      if (!calib.get()) {
        throw UsageError("prediction frames need --calib to decode (" +
                         manifest_path.string() + ")");
      }
      PredH frame;
      Check(clinet_pred_load(manifest_path.c_str(), 1, frame.out()), manifest_path.string());
      const clinet_camera cam = CameraById(calib.get(), e.camera_id);
      Check(clinet_decode(frame.get(), &cam, s.conf_threshold, s.legacy_offset ? 1 : 0,
                          pred.out()),
            manifest_path.string());
    }
    Check(clinet_evaluate_frame(e.label.get(), pred.get(), &cfg, results[k].out()), stem);
  });

  std::string breakdown;
  std::vector<const clinet_frame_result*> ptrs;
  for (const ResultH& r : results) {
    char* line = nullptr;
    Check(clinet_frame_result_json(r.get(), &line), "breakdown");
    breakdown += TakeString(line);
    ptrs.push_back(r.get());
  }
  char* report = nullptr;
  Check(clinet_aggregate(ptrs.data(), ptrs.size(), &cfg, &report), "aggregate");
  const std::string report_text = TakeString(report);

  if (!a.out.empty()) {
    const fs::path out(a.out);
    EnsureDir(out);
    WriteText(out / "report.json", report_text);
    WriteText(out / "per_frame.ndjson", breakdown);
  }
  std::cout << report_text;
  return 0;
}

// ---- losses-check / inspect ------------------------------------------------------

struct LossArgs {
  std::string label, pred;
};

int CmdLosses(const LossArgs& a, const CommonFlags& common) {
  const Settings s = common.Resolve();
  LabelH label;
  PredH pred;
  Check(clinet_label_load(a.label.c_str(), 1, label.out()), a.label);
  Check(clinet_pred_load(a.pred.c_str(), 1, pred.out()), a.pred);
  double v[4];
  Check(clinet_losses_check(label.get(), pred.get(), s.gamma, v), "losses-check");
  nlohmann::ordered_json out;
  out["l_conf"] = v[0];
  out["l_offset"] = v[1];
  out["l_depth"] = v[2];
  out["l_total"] = v[3];
  out["gamma"] = s.gamma;
  std::cout << out.dump(2) << "\n";
  return 0;
}

int CmdInspect(const std::string& path) {
  char* text = nullptr;
  Check(clinet_inspect(path.c_str(), &text), path);
  std::cout << TakeString(text);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"clinet-bench: centerline key-point auto-labeling and benchmarking"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "clinet-bench 1.0.0");

  CommonFlags synth_flags, label_flags, decode_flags, eval_flags, loss_flags;

  SynthArgs synth;
  CLI::App* synth_cmd = app.add_subcommand("synth", "generate a synthetic scene corpus");
  synth_cmd->add_option("--seed", synth.seed, "scene seed");
  synth_cmd->add_option("--layout", synth.layout, "straight | curve | grid_with_intersections");
  synth_cmd->add_option("--out", synth.out, "output directory")->required();
  synth_cmd->add_option("--cameras", synth.cameras, "camera rig size")->check(CLI::IsMember({1, 3}));
  synth_cmd->add_option("--num-lanes", synth.num_lanes, "parallel centerlines")
      ->check(CLI::PositiveNumber);
  synth_cmd->add_option("--lane-width", synth.lane_width, "lane width in meters")
      ->check(CLI::PositiveNumber);
  synth_cmd->add_option("--length", synth.length, "trajectory length in meters")
      ->check(CLI::PositiveNumber);
  synth_cmd->add_option("--speed", synth.speed, "ego speed in m/s")->check(CLI::PositiveNumber);
  synth_cmd->add_option("--rate", synth.rate, "frame rate in Hz")->check(CLI::PositiveNumber);
  synth_cmd->add_flag("--no-images", synth.no_images, "skip PNG rendering");
  synth_flags.AddConfig(synth_cmd);
  synth_flags.AddWorkers(synth_cmd);

  LabelArgs label;
  CLI::App* label_cmd = app.add_subcommand("label", "auto-label frames from a vector map");
  label_cmd->add_option("--map", label.map, "map JSON")->required()->check(CLI::ExistingFile);
  label_cmd->add_option("--poses", label.poses, "pose NDJSON")->required()->check(CLI::ExistingFile);
  label_cmd->add_option("--calib", label.calib, "calibration JSON")
      ->required()
      ->check(CLI::ExistingFile);
  label_cmd->add_option("--frames", label.frames, "frame list NDJSON (default: next to poses)")
      ->check(CLI::ExistingFile);
  label_cmd->add_option("--out", label.out, "label output directory")->required();
  label_cmd->add_option("--pred-out", label.pred_out,
                        "also write the labels as CLTN prediction frames here");
  label_flags.AddConfig(label_cmd);
  label_flags.AddStride(label_cmd, 1);
  label_flags.AddWorkers(label_cmd);

  DecodeArgs decode;
  CLI::App* decode_cmd = app.add_subcommand("decode", "decode CLTN prediction frames to key-points");
  decode_cmd->add_option("--pred", decode.pred, "prediction manifest or directory")
      ->required()
      ->check(CLI::ExistingPath);
  decode_cmd->add_option("--calib", decode.calib, "calibration JSON")
      ->required()
      ->check(CLI::ExistingFile);
  decode_cmd->add_option("--out", decode.out, "output directory")->required();
  decode_cmd->add_flag("--legacy-offset", decode.legacy, "pixel = j + s * offset");
  decode_flags.AddConfig(decode_cmd);
  decode_flags.AddWorkers(decode_cmd);
  decode_flags.AddThreshold(decode_cmd);

  EvalArgs eval;
  CLI::App* eval_cmd = app.add_subcommand("eval", "score predictions against labels");
  eval_cmd->add_option("--gt", eval.gt, "ground-truth label directory")
      ->required()
      ->check(CLI::ExistingDirectory);
  eval_cmd->add_option("--pred", eval.pred, "prediction directory (labels or *.pred.json)")
      ->required()
      ->check(CLI::ExistingDirectory);
  eval_cmd->add_option("--calib", eval.calib, "calibration, needed for *.pred.json")
      ->check(CLI::ExistingFile);
  eval_cmd->add_option("--out", eval.out, "write report.json and per_frame.ndjson here");
  eval_cmd->add_flag("--per-frame-average", eval.per_frame_average,
                     "average per-frame ratios instead of pooling counts");
  eval_cmd->add_flag("--legacy-offset", eval.legacy, "pixel = j + s * offset when decoding");
  eval_flags.AddConfig(eval_cmd);
  eval_flags.AddStride(eval_cmd, 10);
  eval_flags.AddWorkers(eval_cmd);
  eval_flags.AddThreshold(eval_cmd);
  eval_flags.AddWindows(eval_cmd);

  LossArgs loss;
  CLI::App* loss_cmd =
      app.add_subcommand("losses-check", "evaluate training losses for a label/prediction pair");
  loss_cmd->add_option("--label", loss.label, "label JSON")->required()->check(CLI::ExistingFile);
  loss_cmd->add_option("--pred", loss.pred, "prediction manifest")
      ->required()
      ->check(CLI::ExistingFile);
  loss_flags.AddConfig(loss_cmd);
  loss_flags.AddGamma(loss_cmd);

  std::string inspect_path;
  CLI::App* inspect_cmd = app.add_subcommand("inspect", "summarize any artifact");
  inspect_cmd->add_option("path", inspect_path, "file to inspect")
      ->required()
      ->check(CLI::ExistingFile);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*synth_cmd) return CmdSynth(synth, synth_flags);
    if (*label_cmd) return CmdLabel(label, label_flags);
    if (*decode_cmd) return CmdDecode(decode, decode_flags);
    if (*eval_cmd) return CmdEval(eval, eval_flags);
    if (*loss_cmd) return CmdLosses(loss, loss_flags);
    if (*inspect_cmd) return CmdInspect(inspect_path);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const DataError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
