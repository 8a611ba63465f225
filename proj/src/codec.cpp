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

#include "clinet/codec.hpp"

#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <iterator>
#include <limits>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

#include "clinet/error.hpp"

namespace clinet {
namespace {

using nlohmann::json;
using ordered = nlohmann::ordered_json;

static_assert(std::endian::native == std::endian::little ||
                  std::endian::native == std::endian::big,
              "mixed-endian platforms are not supported");

[[noreturn]] void ParseFail(const std::string& where, const std::string& what) {
  Fail(ErrorCode::kParseError, where + ": " + what);
}

json ParseJsonText(std::string_view text, const std::string& where) {
  try {
    return json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    ParseFail(where, e.what());
  }
}

// Typed access to one JSON object with path-qualified errors. In strict mode
// Finish() rejects keys that were never read.
class ObjectReader {
 public:
  ObjectReader(const json& j, std::string path, ParseMode mode)
      : j_(j), path_(std::move(path)), mode_(mode) {
    if (!j_.is_object()) ParseFail(path_, "expected an object");
  }

  const std::string& path() const { return path_; }
  std::string Child(const std::string& key) const {
    return path_.empty() ? key : path_ + "." + key;
  }

  bool Has(const std::string& key) const { return j_.contains(key); }

  const json& Required(const std::string& key) {
    auto it = j_.find(key);
    if (it == j_.end()) ParseFail(Child(key), "missing required field");
    seen_.insert(key);
    return *it;
  }

  std::string String(const std::string& key) {
    const json& v = Required(key);
    if (!v.is_string()) ParseFail(Child(key), "expected a string");
    return v.get<std::string>();
  }

  double Number(const std::string& key) { return AsNumber(Required(key), Child(key)); }

  std::int64_t Integer(const std::string& key) {
    return AsInteger(Required(key), Child(key));
  }

  int Int(const std::string& key) {
    const std::int64_t v = Integer(key);
    if (v < std::numeric_limits<int>::min() || v > std::numeric_limits<int>::max()) {
      ParseFail(Child(key), "integer out of range");
    }
    return static_cast<int>(v);
  }

  bool Bool(const std::string& key) {
    const json& v = Required(key);
    if (!v.is_boolean()) ParseFail(Child(key), "expected a boolean");
    return v.get<bool>();
  }

  const json& Array(const std::string& key) {
    const json& v = Required(key);
    if (!v.is_array()) ParseFail(Child(key), "expected an array");
    return v;
  }

  static double AsNumber(const json& v, const std::string& where) {
    if (!v.is_number()) ParseFail(where, "expected a number");
    const double d = v.get<double>();
    if (!std::isfinite(d)) ParseFail(where, "number is not finite");
    return d;
  }

  static std::int64_t AsInteger(const json& v, const std::string& where) {
    if (v.is_number_unsigned()) {
      const auto u = v.get<std::uint64_t>();
      if (u > static_cast<std::uint64_t>(std::numeric_limits<std::int64_t>::max())) {
        ParseFail(where, "integer out of range");
      }
      return static_cast<std::int64_t>(u);
    }
    if (!v.is_number_integer()) ParseFail(where, "expected an integer");
    return v.get<std::int64_t>();
  }

  void Finish() const {
    if (mode_ != ParseMode::kStrict) return;
    for (auto it = j_.begin(); it != j_.end(); ++it) {
      if (!seen_.contains(it.key())) ParseFail(Child(it.key()), "unknown field");
    }
  }

 private:
  const json& j_;
  std::string path_;
  ParseMode mode_;
  std::set<std::string> seen_;
};

std::vector<double> NumberArray(const json& v, const std::string& where,
                                std::size_t expected) {
  if (!v.is_array() || v.size() != expected) {
    ParseFail(where, "expected an array of " + std::to_string(expected) +
                         " numbers");
  }
  std::vector<double> out;
  for (std::size_t k = 0; k < v.size(); ++k) {
    out.push_back(ObjectReader::AsNumber(v[k], where + "[" + std::to_string(k) + "]"));
  }
  return out;
}

Vec3 ReadVec3(const json& v, const std::string& where) {
  const auto a = NumberArray(v, where, 3);
  return {a[0], a[1], a[2]};
}

// (w, x, y, z); rejects norms more than 1e-6 from unity and renormalizes
// anything not already unit to 1e-12.
Quat ReadQuat(const json& v, const std::string& where) {
  const auto a = NumberArray(v, where, 4);
  Quat q(a[0], a[1], a[2], a[3]);
  const double n = q.norm();
  if (std::abs(n - 1.0) > 1e-6) {
    ParseFail(where, "quaternion norm " + std::to_string(n) + " is not unit");
  }
  if (std::abs(n - 1.0) > 1e-12) q.normalize();
  return q;
}

ordered Vec3Json(const Vec3& v) { return ordered::array({v.x(), v.y(), v.z()}); }
ordered Vec2Json(const Vec2& v) { return ordered::array({v.x(), v.y()}); }
ordered QuatJson(const Quat& q) {
  return ordered::array({q.w(), q.x(), q.y(), q.z()});
}

std::string Dump(const ordered& j) { return j.dump(2) + "\n"; }

std::string LineWhere(std::size_t line) { return "line " + std::to_string(line); }

// Calls fn(json, where) for every non-blank NDJSON line.
template <typename Fn>
void ForEachLine(std::string_view text, Fn&& fn) {
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.find_first_not_of(" \t") == std::string_view::npos) continue;
    fn(ParseJsonText(line, LineWhere(line_no)), LineWhere(line_no));
  }
}

void PutU16(std::vector<std::uint8_t>& out, std::uint16_t v) {
  out.push_back(static_cast<std::uint8_t>(v & 0xff));
  out.push_back(static_cast<std::uint8_t>(v >> 8));
}

void PutU32(std::vector<std::uint8_t>& out, std::uint32_t v) {
  for (int b = 0; b < 4; ++b) out.push_back(static_cast<std::uint8_t>(v >> (8 * b)));
}

std::uint32_t GetU32(std::span<const std::uint8_t> bytes, std::size_t at) {
  std::uint32_t v = 0;
  for (int b = 0; b < 4; ++b) v |= static_cast<std::uint32_t>(bytes[at + b]) << (8 * b);
  return v;
}

}  // namespace

// ---- file helpers ---------------------------------------------------------

std::string ReadTextFile(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) Fail(ErrorCode::kIoError, "cannot open '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<std::uint8_t> ReadBinaryFile(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) Fail(ErrorCode::kIoError, "cannot open '" + path.string() + "'");
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void WriteFile(const std::filesystem::path& path, std::string_view contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) Fail(ErrorCode::kIoError, "cannot write '" + path.string() + "'");
  out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
  if (!out) Fail(ErrorCode::kIoError, "short write to '" + path.string() + "'");
}

void WriteFile(const std::filesystem::path& path,
               std::span<const std::uint8_t> contents) {
  WriteFile(path, std::string_view(reinterpret_cast<const char*>(contents.data()),
                                   contents.size()));
}

// ---- map ------------------------------------------------------------------

VectorMap ParseMap(std::string_view text, ParseMode mode) {
  const json root = ParseJsonText(text, "map");
  ObjectReader top(root, "", mode);
  const json& lanes = top.Array("lanes");
  top.Finish();

  VectorMap map;
  for (std::size_t k = 0; k < lanes.size(); ++k) {
    ObjectReader r(lanes[k], "lanes[" + std::to_string(k) + "]", mode);
    Lane lane;
    lane.line.lane_id = r.String("id");
    const std::string kind = r.String("kind");
    if (kind == "centerline") {
      lane.line.kind = LaneKind::kCenterline;
    } else if (kind == "boundary") {
      lane.line.kind = LaneKind::kBoundary;
    } else {
      ParseFail(r.Child("kind"), "expected 'centerline' or 'boundary'");
    }
    lane.line.is_intersection = r.Bool("is_intersection");
    const json& succ = r.Array("successors");
    for (std::size_t s = 0; s < succ.size(); ++s) {
      if (!succ[s].is_string()) {
        ParseFail(r.Child("successors") + "[" + std::to_string(s) + "]",
                  "expected a string");
      }
      lane.successors.push_back(succ[s].get<std::string>());
    }
    const json& pts = r.Array("points");
    for (std::size_t p = 0; p < pts.size(); ++p) {
      lane.line.points.push_back(
          ReadVec3(pts[p], r.Child("points") + "[" + std::to_string(p) + "]"));
    }
    r.Finish();
    map.AddLane(std::move(lane));
  }
  map.Validate();
  return map;
}

std::string SerializeMap(const VectorMap& map) {
  ordered lanes = ordered::array();
  for (const Lane& lane : map.lanes()) {
    ordered l;
    l["id"] = lane.line.lane_id;
    l["kind"] = lane.line.kind == LaneKind::kCenterline ? "centerline" : "boundary";
    l["is_intersection"] = lane.line.is_intersection;
    l["successors"] = lane.successors;
    ordered pts = ordered::array();
    for (const Vec3& p : lane.line.points) pts.push_back(Vec3Json(p));
    l["points"] = std::move(pts);
    lanes.push_back(std::move(l));
  }
  ordered root;
  root["lanes"] = std::move(lanes);
  return Dump(root);
}

// ---- poses ----------------------------------------------------------------

std::vector<SE3Pose> ParsePoseTrack(std::string_view text, ParseMode mode) {
  std::vector<SE3Pose> track;
  ForEachLine(text, [&](const json& j, const std::string& where) {
    ObjectReader r(j, where, mode);
    SE3Pose pose;
    pose.timestamp_ns = r.Integer("timestamp_ns");
    pose.t = ReadVec3(r.Required("t"), r.Child("t"));
    pose.q = ReadQuat(r.Required("q"), r.Child("q"));
    r.Finish();
    if (pose.timestamp_ns < 0) ParseFail(where, "negative timestamp");
    if (!track.empty() && pose.timestamp_ns <= track.back().timestamp_ns) {
      ParseFail(where, "timestamps must be strictly increasing");
    }
    track.push_back(pose);
  });
  return track;
}

std::string SerializePoseTrack(std::span<const SE3Pose> track) {
  std::string out;
  for (const SE3Pose& pose : track) {
    ordered j;
    j["timestamp_ns"] = pose.timestamp_ns;
    j["t"] = Vec3Json(pose.t);
    j["q"] = QuatJson(pose.q);
    out += j.dump();
    out += '\n';
  }
  return out;
}

// ---- calibration ----------------------------------------------------------

const CameraModel& Calibration::Get(const std::string& id) const {
  for (const CalibratedCamera& c : cameras) {
    if (c.id == id) return c.camera;
  }
  Fail(ErrorCode::kInvalidArgument, "no camera '" + id + "' in calibration");
}

Calibration ParseCalibration(std::string_view text, ParseMode mode) {
  const json root = ParseJsonText(text, "calibration");
  ObjectReader top(root, "", mode);
  const json& cams = top.Array("cameras");
  top.Finish();

  Calibration calib;
  std::set<std::string> ids;
  for (std::size_t k = 0; k < cams.size(); ++k) {
    ObjectReader r(cams[k], "cameras[" + std::to_string(k) + "]", mode);
    CalibratedCamera entry;
    entry.id = r.String("id");
    CameraModel& cam = entry.camera;
    cam.fx = r.Number("fx");
    cam.fy = r.Number("fy");
    cam.cx = r.Number("cx");
    cam.cy = r.Number("cy");
    cam.width = r.Int("width");
    cam.height = r.Int("height");
    {
      ObjectReader ext(r.Required("extrinsic"), r.Child("extrinsic"), mode);
      cam.extrinsic.t = ReadVec3(ext.Required("t"), ext.Child("t"));
      cam.extrinsic.q = ReadQuat(ext.Required("q"), ext.Child("q"));
      ext.Finish();
    }
    if (r.Has("transform")) {
      ObjectReader tr(r.Required("transform"), r.Child("transform"), mode);
      cam.transform.crop_x0 = tr.Int("crop_x0");
      cam.transform.crop_y0 = tr.Int("crop_y0");
      cam.transform.crop_w = tr.Int("crop_w");
      cam.transform.crop_h = tr.Int("crop_h");
      cam.transform.scale_x = tr.Number("scale_x");
      cam.transform.scale_y = tr.Number("scale_y");
      tr.Finish();
    } else {
      cam.transform = IdentityTransform(cam);
    }
    r.Finish();
    if (!ids.insert(entry.id).second) {
      Fail(ErrorCode::kInvariantViolation, "duplicate camera id '" + entry.id + "'");
    }
    ValidateCamera(cam);
    calib.cameras.push_back(std::move(entry));
  }
  return calib;
}

std::string SerializeCalibration(const Calibration& calib) {
  ordered cams = ordered::array();
  for (const CalibratedCamera& entry : calib.cameras) {
    const CameraModel& cam = entry.camera;
    ordered c;
    c["id"] = entry.id;
    c["fx"] = cam.fx;
    c["fy"] = cam.fy;
    c["cx"] = cam.cx;
    c["cy"] = cam.cy;
    c["width"] = cam.width;
    c["height"] = cam.height;
    ordered ext;
    ext["t"] = Vec3Json(cam.extrinsic.t);
    ext["q"] = QuatJson(cam.extrinsic.q);
    c["extrinsic"] = std::move(ext);
    ordered tr;
    tr["crop_x0"] = cam.transform.crop_x0;
    tr["crop_y0"] = cam.transform.crop_y0;
    tr["crop_w"] = cam.transform.crop_w;
    tr["crop_h"] = cam.transform.crop_h;
    tr["scale_x"] = cam.transform.scale_x;
    tr["scale_y"] = cam.transform.scale_y;
    c["transform"] = std::move(tr);
    cams.push_back(std::move(c));
  }
  ordered root;
  root["cameras"] = std::move(cams);
  return Dump(root);
}

// ---- frame list -----------------------------------------------------------

std::vector<FrameInfo> ParseFrameList(std::string_view text, ParseMode mode) {
  std::vector<FrameInfo> frames;
  ForEachLine(text, [&](const json& j, const std::string& where) {
    ObjectReader r(j, where, mode);
    FrameInfo f;
    f.frame_id = r.String("frame_id");
    f.timestamp_ns = r.Integer("timestamp_ns");
    r.Finish();
    frames.push_back(std::move(f));
  });
  return frames;
}

std::string SerializeFrameList(std::span<const FrameInfo> frames) {
  std::string out;
  for (const FrameInfo& f : frames) {
    ordered j;
    j["frame_id"] = f.frame_id;
    j["timestamp_ns"] = f.timestamp_ns;
    out += j.dump();
    out += '\n';
  }
  return out;
}

// ---- labels ---------------------------------------------------------------

LabelGrid ParseLabel(std::string_view text, ParseMode mode) {
  const json root = ParseJsonText(text, "label");
  ObjectReader r(root, "", mode);
  LabelGrid grid;
  grid.frame_id = r.String("frame_id");
  grid.camera_id = r.String("camera_id");
  grid.timestamp_ns = r.Integer("timestamp_ns");
  {
    ObjectReader c(r.Required("config"), "config", mode);
    grid.config.h0 = c.Int("h0");
    grid.config.w0 = c.Int("w0");
    grid.config.h1 = c.Int("h1");
    grid.config.w1 = c.Int("w1");
    grid.config.s = c.Int("s");
    c.Finish();
  }
  ValidateLabelConfig(grid.config);
  const json& kps = r.Array("keypoints");
  for (std::size_t k = 0; k < kps.size(); ++k) {
    ObjectReader kr(kps[k], "keypoints[" + std::to_string(k) + "]", mode);
    KeyPoint kp;
    const json& cell = kr.Required("cell");
    if (!cell.is_array() || cell.size() != 2) {
      ParseFail(kr.Child("cell"), "expected [i, j]");
    }
    kp.cell = {static_cast<int>(ObjectReader::AsInteger(cell[0], kr.Child("cell[0]"))),
               static_cast<int>(ObjectReader::AsInteger(cell[1], kr.Child("cell[1]")))};
    const auto off = NumberArray(kr.Required("offset"), kr.Child("offset"), 2);
    kp.offset = {off[0], off[1]};
    const auto px = NumberArray(kr.Required("pixel"), kr.Child("pixel"), 2);
    kp.pixel = {px[0], px[1]};
    kp.depth_m = kr.Number("depth_m");
    const json& xyz = kr.Required("xyz_cam");
    if (!xyz.is_null()) kp.xyz_cam = ReadVec3(xyz, kr.Child("xyz_cam"));
    kp.lane_id = kr.String("lane_id");
    kr.Finish();
    grid.keypoints.push_back(std::move(kp));
  }
  r.Finish();
  NormalizeKeyPoints(grid);
  return grid;
}

std::string SerializeLabel(const LabelGrid& label) {
  ordered root;
  root["frame_id"] = label.frame_id;
  root["camera_id"] = label.camera_id;
  root["timestamp_ns"] = label.timestamp_ns;
  ordered cfg;
  cfg["h0"] = label.config.h0;
  cfg["w0"] = label.config.w0;
  cfg["h1"] = label.config.h1;
  cfg["w1"] = label.config.w1;
  cfg["s"] = label.config.s;
  root["config"] = std::move(cfg);
  ordered kps = ordered::array();
  for (const KeyPoint& kp : label.keypoints) {
    ordered k;
    k["cell"] = ordered::array({kp.cell.i, kp.cell.j});
    k["offset"] = Vec2Json(kp.offset);
    k["pixel"] = Vec2Json(kp.pixel);
    k["depth_m"] = kp.depth_m;
    k["xyz_cam"] = kp.xyz_cam ? Vec3Json(*kp.xyz_cam) : ordered(nullptr);
    k["lane_id"] = kp.lane_id;
    kps.push_back(std::move(k));
  }
  root["keypoints"] = std::move(kps);
  return Dump(root);
}

// ---- reports --------------------------------------------------------------

std::string SerializeReport(const EvalReport& report) {
  ordered windows = ordered::array();
  for (const WindowReport& w : report.windows) {
    ordered j;
    j["n"] = w.n;
    j["tp"] = w.counts.tp;
    j["fp"] = w.counts.fp;
    j["fn"] = w.counts.fn;
    j["precision"] = w.scores.precision;
    j["recall"] = w.scores.recall;
    j["f1"] = w.scores.f1;
    windows.push_back(std::move(j));
  }
  ordered root;
  root["windows"] = std::move(windows);
  root["avg_depth_error"] = report.avg_depth_error;
  root["frames"] = report.frames;
  root["keypoints"] = report.keypoints;
  return Dump(root);
}

std::string SerializeFrameResult(const FrameResult& frame) {
  ordered windows = ordered::array();
  for (std::size_t w = 0; w < frame.window_sizes.size(); ++w) {
    ordered j;
    j["n"] = frame.window_sizes[w];
    j["tp"] = frame.counts[w].tp;
    j["fp"] = frame.counts[w].fp;
    j["fn"] = frame.counts[w].fn;
    windows.push_back(std::move(j));
  }
  double sum = 0.0;
  for (double e : frame.depth_errors) sum += e;
  ordered root;
  root["frame_id"] = frame.frame_id;
  root["camera_id"] = frame.camera_id;
  root["keypoints"] = frame.gt_keypoints;
  root["windows"] = std::move(windows);
  root["depth_matches"] = frame.depth_errors.size();
  root["avg_depth_error"] =
      frame.depth_errors.empty() ? 0.0 : sum / static_cast<double>(frame.depth_errors.size());
  return root.dump() + "\n";
}

// ---- tensors --------------------------------------------------------------

std::uint64_t TensorBlob::NumElements() const {
  std::uint64_t n = 1;
  for (std::uint32_t d : dims) n *= d;
  return n;
}

namespace {

constexpr std::uint8_t kMagic[4] = {'C', 'L', 'T', 'N'};
constexpr std::uint8_t kVersion = 1;
constexpr std::uint8_t kDtypeF32 = 1;
constexpr std::size_t kFixedHeader = 8;

// Element count, or kDimOverflow when rank or size is unrepresentable.
std::uint64_t CheckedElements(std::span<const std::uint32_t> dims) {
  if (dims.empty() || dims.size() > kMaxTensorRank) {
    Fail(ErrorCode::kDimOverflow,
         "tensor rank must be in [1, " + std::to_string(kMaxTensorRank) +
             "], got " + std::to_string(dims.size()));
  }
  std::uint64_t n = 1;
  constexpr std::uint64_t kLimit = std::numeric_limits<std::uint64_t>::max() / 4;
  for (std::uint32_t d : dims) {
    if (d != 0 && n > kLimit / d) {
      Fail(ErrorCode::kDimOverflow, "tensor element count overflows");
    }
    n *= d;
  }
  return n;
}

}  // namespace

TensorBlob ReadTensor(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < 4 || std::memcmp(bytes.data(), kMagic, 4) != 0) {
    Fail(ErrorCode::kBadMagic, "not a CLTN tensor (bad magic)");
  }
  if (bytes.size() < kFixedHeader) {
    Fail(ErrorCode::kTruncatedPayload, "tensor header truncated");
  }
  if (bytes[4] != kVersion) {
    Fail(ErrorCode::kUnsupportedVersion,
         "unsupported CLTN version " + std::to_string(bytes[4]));
  }
  if (bytes[5] != kDtypeF32) {
    Fail(ErrorCode::kUnsupportedVersion,
         "unsupported CLTN dtype " + std::to_string(bytes[5]));
  }
  const std::size_t rank = bytes[6] | (static_cast<std::size_t>(bytes[7]) << 8);
  if (rank == 0 || rank > kMaxTensorRank) {
    Fail(ErrorCode::kDimOverflow, "tensor rank must be in [1, " +
                                      std::to_string(kMaxTensorRank) + "], got " +
                                      std::to_string(rank));
  }
  if (bytes.size() < kFixedHeader + 4 * rank) {
    Fail(ErrorCode::kTruncatedPayload, "tensor dims truncated");
  }
  TensorBlob t;
  for (std::size_t k = 0; k < rank; ++k) t.dims.push_back(GetU32(bytes, kFixedHeader + 4 * k));
  const std::uint64_t n = CheckedElements(t.dims);
  const std::size_t payload_at = kFixedHeader + 4 * rank;
  const std::uint64_t available = bytes.size() - payload_at;
  if (available < 4 * n) {
    Fail(ErrorCode::kTruncatedPayload,
         "tensor payload has " + std::to_string(available) + " bytes, expected " +
             std::to_string(4 * n));
  }
  if (available > 4 * n) {
    Fail(ErrorCode::kParseError, "trailing bytes after tensor payload");
  }
  t.data.resize(n);
  for (std::uint64_t k = 0; k < n; ++k) {
    t.data[k] = std::bit_cast<float>(GetU32(bytes, payload_at + 4 * k));
  }
  return t;
}

std::vector<std::uint8_t> WriteTensor(const TensorBlob& tensor) {
  const std::uint64_t n = CheckedElements(tensor.dims);
  if (tensor.data.size() != n) {
    Fail(ErrorCode::kInvalidArgument,
         "tensor payload has " + std::to_string(tensor.data.size()) +
             " elements, dims imply " + std::to_string(n));
  }
  std::vector<std::uint8_t> out(kMagic, kMagic + 4);
  out.reserve(kFixedHeader + 4 * tensor.dims.size() + 4 * n);
  out.push_back(kVersion);
  out.push_back(kDtypeF32);
  PutU16(out, static_cast<std::uint16_t>(tensor.dims.size()));
  for (std::uint32_t d : tensor.dims) PutU32(out, d);
  for (float v : tensor.data) PutU32(out, std::bit_cast<std::uint32_t>(v));
  return out;
}

TensorBlob TensorFromGrid(const Grid& grid) {
  TensorBlob t;
  t.dims = {static_cast<std::uint32_t>(grid.rows()),
            static_cast<std::uint32_t>(grid.cols())};
  if (grid.channels() != 1) t.dims.push_back(static_cast<std::uint32_t>(grid.channels()));
  t.data.reserve(grid.size());
  for (double v : grid.data()) t.data.push_back(static_cast<float>(v));
  return t;
}

Grid GridFromTensor(const TensorBlob& tensor) {
  if (tensor.dims.size() != 2 && tensor.dims.size() != 3) {
    Fail(ErrorCode::kShapeMismatch,
         "expected a rank-2 or rank-3 tensor, got rank " +
             std::to_string(tensor.dims.size()));
  }
  const int channels = tensor.dims.size() == 3 ? static_cast<int>(tensor.dims[2]) : 1;
  Grid g(static_cast<int>(tensor.dims[0]), static_cast<int>(tensor.dims[1]), channels);
  for (std::size_t k = 0; k < tensor.data.size(); ++k) g.data()[k] = tensor.data[k];
  return g;
}

// ---- prediction frames ----------------------------------------------------

PredictionManifest ParsePredictionManifest(std::string_view text, ParseMode mode) {
  const json root = ParseJsonText(text, "prediction manifest");
  ObjectReader r(root, "", mode);
  PredictionManifest m;
  m.frame_id = r.String("frame_id");
  m.camera_id = r.String("camera_id");
  m.s = r.Int("s");
  m.conf = r.String("conf");
  m.offset = r.String("offset");
  m.depth = r.String("depth");
  r.Finish();
  if (m.s < 1) ParseFail("s", "grid scale must be positive");
  return m;
}

std::string SerializePredictionManifest(const PredictionManifest& m) {
  ordered root;
  root["frame_id"] = m.frame_id;
  root["camera_id"] = m.camera_id;
  root["s"] = m.s;
  root["conf"] = m.conf;
  root["offset"] = m.offset;
  root["depth"] = m.depth;
  return Dump(root);
}

PredictionGrid LoadPredictionFrame(const std::filesystem::path& manifest_path,
                                   ParseMode mode) {
  const PredictionManifest m =
      ParsePredictionManifest(ReadTextFile(manifest_path), mode);
  const std::filesystem::path dir = manifest_path.parent_path();
  PredictionGrid pred;
  pred.frame_id = m.frame_id;
  pred.camera_id = m.camera_id;
  pred.conf = GridFromTensor(ReadTensor(ReadBinaryFile(dir / m.conf)));
  pred.offset = GridFromTensor(ReadTensor(ReadBinaryFile(dir / m.offset)));
  pred.depth = GridFromTensor(ReadTensor(ReadBinaryFile(dir / m.depth)));
  pred.config.h1 = pred.conf.rows();
  pred.config.w1 = pred.conf.cols();
  pred.config.s = m.s;
  pred.config.h0 = pred.config.h1 * m.s;
  pred.config.w0 = pred.config.w1 * m.s;
  ValidatePrediction(pred);
  return pred;
}

std::filesystem::path SavePredictionFrame(const PredictionGrid& pred,
                                          const std::filesystem::path& dir,
                                          const std::string& stem) {
  PredictionManifest m;
  m.frame_id = pred.frame_id;
  m.camera_id = pred.camera_id;
  m.s = pred.config.s;
  m.conf = stem + ".conf.cltn";
  m.offset = stem + ".offset.cltn";
  m.depth = stem + ".depth.cltn";
  WriteFile(dir / m.conf, WriteTensor(TensorFromGrid(pred.conf)));
  WriteFile(dir / m.offset, WriteTensor(TensorFromGrid(pred.offset)));
  WriteFile(dir / m.depth, WriteTensor(TensorFromGrid(pred.depth)));
  const std::filesystem::path manifest = dir / (stem + ".pred.json");
  WriteFile(manifest, SerializePredictionManifest(m));
  return manifest;
}

}  // namespace clinet
