// Copyright 2026 The pdq-eval Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "pdq/io.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace pdq {
namespace {

using json = nlohmann::json;
using ordered_json = nlohmann::ordered_json;

struct Loc {
  const std::string& source;
  std::size_t line;
};

[[noreturn]] void fail(const Loc& loc, const std::string& ptr, const std::string& msg) {
  std::ostringstream os;
  os << loc.source << ":" << loc.line << ": " << (ptr.empty() ? "/" : ptr) << ": " << msg;
  throw InputError(os.str());
}

const json& require(const json& obj, const char* key, const Loc& loc, const std::string& ptr) {
  if (!obj.is_object()) fail(loc, ptr, "expected an object");
  const auto it = obj.find(key);
  if (it == obj.end()) fail(loc, ptr + "/" + key, "missing required field");
  return *it;
}

const json* optional_field(const json& obj, const char* key) {
  const auto it = obj.find(key);
  return it == obj.end() || it->is_null() ? nullptr : &*it;
}

double as_number(const json& v, const Loc& loc, const std::string& ptr) {
  if (!v.is_number()) fail(loc, ptr, "expected a number");
  const double d = v.get<double>();
  if (!std::isfinite(d)) fail(loc, ptr, "expected a finite number");
  return d;
}

std::int64_t as_int(const json& v, const Loc& loc, const std::string& ptr) {
  if (v.is_number_integer()) return v.get<std::int64_t>();
  if (v.is_number_float()) {
    const double d = v.get<double>();
    if (std::isfinite(d) && std::floor(d) == d && std::abs(d) < 9e15) {
      return static_cast<std::int64_t>(d);
    }
  }
  fail(loc, ptr, "expected an integer");
}

const json& as_array(const json& v, const Loc& loc, const std::string& ptr) {
  if (!v.is_array()) fail(loc, ptr, "expected an array");
  return v;
}

std::string as_frame_id(const json& v, const Loc& loc, const std::string& ptr) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number_integer()) return std::to_string(v.get<std::int64_t>());
  fail(loc, ptr, "expected a string or integer frame id");
}

BBox parse_bbox(const json& v, const Loc& loc, const std::string& ptr) {
  const json& a = as_array(v, loc, ptr);
  if (a.size() != 4) fail(loc, ptr, "bbox must have 4 entries [x1, y1, x2, y2]");
  BBox b{as_number(a[0], loc, ptr + "/0"), as_number(a[1], loc, ptr + "/1"),
         as_number(a[2], loc, ptr + "/2"), as_number(a[3], loc, ptr + "/3")};
  if (!b.valid()) fail(loc, ptr, "bbox requires x1 <= x2 and y1 <= y2");
  return b;
}

Cov2 parse_cov(const json& v, const Loc& loc, const std::string& ptr) {
  const json& m = as_array(v, loc, ptr);
  if (m.size() != 2) fail(loc, ptr, "covariance must be a 2x2 matrix");
  double e[4];
  for (int r = 0; r < 2; ++r) {
    const std::string rp = ptr + "/" + std::to_string(r);
    const json& row = as_array(m[r], loc, rp);
    if (row.size() != 2) fail(loc, rp, "covariance row must have 2 entries");
    for (int c = 0; c < 2; ++c) e[r * 2 + c] = as_number(row[c], loc, rp + "/" + std::to_string(c));
  }
  const Cov2 cov{e[0], e[1], e[2], e[3]};
  if (cov.xx < 0.0 || cov.yy < 0.0) fail(loc, ptr, "covariance diagonal must be non-negative");
  if (!cov.valid()) fail(loc, ptr, "covariance must be symmetric positive semi-definite");
  if (!cov.is_diagonal()) {
    std::ostringstream os;
    os << loc.source << ":" << loc.line << ": " << ptr
       << ": non-diagonal corner covariances are not supported";
    throw UnsupportedCovariance(os.str());
  }
  return cov;
}

SegMask parse_mask(const json& v, int width, int height, const Loc& loc, const std::string& ptr) {
  const json& size = as_array(require(v, "size", loc, ptr), loc, ptr + "/size");
  if (size.size() != 2) fail(loc, ptr + "/size", "size must be [width, height]");
  const auto w = as_int(size[0], loc, ptr + "/size/0");
  const auto h = as_int(size[1], loc, ptr + "/size/1");
  if (w != width || h != height) fail(loc, ptr + "/size", "mask size differs from frame size");

  if (const json* rle = optional_field(v, "rle")) {
    const json& runs_json = as_array(*rle, loc, ptr + "/rle");
    std::vector<std::uint32_t> runs;
    runs.reserve(runs_json.size());
    for (std::size_t i = 0; i < runs_json.size(); ++i) {
      const auto r = as_int(runs_json[i], loc, ptr + "/rle/" + std::to_string(i));
      if (r < 0 || r > 0xFFFFFFFFLL) fail(loc, ptr + "/rle/" + std::to_string(i), "run length out of range");
      runs.push_back(static_cast<std::uint32_t>(r));
    }
    try {
      return SegMask::from_rle(width, height, std::move(runs));
    } catch (const DecodeError& e) {
      std::ostringstream os;
      os << loc.source << ":" << loc.line << ": " << ptr << "/rle: " << e.what();
      throw DecodeError(os.str());
    }
  }
  if (const json* polys = optional_field(v, "polygons")) {
    const json& arr = as_array(*polys, loc, ptr + "/polygons");
    std::vector<std::vector<double>> polygons;
    for (std::size_t p = 0; p < arr.size(); ++p) {
      const std::string pp = ptr + "/polygons/" + std::to_string(p);
      const json& coords = as_array(arr[p], loc, pp);
      if (coords.size() < 6 || coords.size() % 2 != 0) {
        fail(loc, pp, "polygon needs an even number of coordinates, at least 3 points");
      }
      std::vector<double> flat;
      for (std::size_t i = 0; i < coords.size(); ++i) {
        flat.push_back(as_number(coords[i], loc, pp + "/" + std::to_string(i)));
      }
      polygons.push_back(std::move(flat));
    }
    return rasterize_polygons(width, height, polygons);
  }
  fail(loc, ptr, "mask needs either 'rle' or 'polygons'");
}

template <typename Fn>
void for_each_record(std::istream& in, const std::string& source, Fn&& fn) {
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    json rec;
    try {
      rec = json::parse(line);
    } catch (const json::exception& e) {
      fail(Loc{source, lineno}, "", std::string("malformed JSON: ") + e.what());
    }
    if (!rec.is_object()) fail(Loc{source, lineno}, "", "record must be a JSON object");
    fn(rec, Loc{source, lineno});
  }
  if (in.bad()) throw IoError("read error on " + source);
}

std::ifstream open_input(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path.string() + "' for reading");
  return in;
}

std::ofstream open_output(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  return out;
}

void finish_output(std::ofstream& out, const std::filesystem::path& path) {
  out.flush();
  if (!out) throw IoError("write error on '" + path.string() + "'");
}

ordered_json cov_json(const Cov2& c) {
  return ordered_json::array({ordered_json::array({c.xx, c.xy}), ordered_json::array({c.yx, c.yy})});
}

std::string fmt6(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

}  // namespace

void DatasetManifest::add_frame(FrameInfo info) {
  if (index_.contains(info.frame_id)) {
    throw InputError("duplicate frame id '" + info.frame_id + "'");
  }
  index_.emplace(info.frame_id, frames_.size());
  frames_.push_back(std::move(info));
}

std::optional<std::size_t> DatasetManifest::find(const std::string& frame_id) const {
  const auto it = index_.find(frame_id);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

GroundTruthSet parse_ground_truth(std::istream& in, const std::string& source) {
  GroundTruthSet out;
  bool first = true;
  for_each_record(in, source, [&](const json& rec, const Loc& loc) {
    const bool is_first = first;
    first = false;
    if (const json* names = optional_field(rec, "class_names")) {
      if (!is_first) fail(loc, "/class_names", "header record must be the first line");
      const json& arr = as_array(*names, loc, "/class_names");
      if (arr.empty()) fail(loc, "/class_names", "at least one class is required");
      for (std::size_t i = 0; i < arr.size(); ++i) {
        if (!arr[i].is_string()) fail(loc, "/class_names/" + std::to_string(i), "expected a string");
        const auto name = arr[i].get<std::string>();
        if (std::find(out.manifest.class_names.begin(), out.manifest.class_names.end(), name) !=
            out.manifest.class_names.end()) {
          fail(loc, "/class_names/" + std::to_string(i), "duplicate class name '" + name + "'");
        }
        out.manifest.class_names.push_back(name);
      }
      return;
    }
    Frame frame;
    frame.frame_id = as_frame_id(require(rec, "frame_id", loc, ""), loc, "/frame_id");
    const auto w = as_int(require(rec, "width", loc, ""), loc, "/width");
    const auto h = as_int(require(rec, "height", loc, ""), loc, "/height");
    if (w <= 0 || h <= 0 || w > 1 << 16 || h > 1 << 16) fail(loc, "/width", "frame size out of range");
    frame.width = static_cast<int>(w);
    frame.height = static_cast<int>(h);
    const json& objects = as_array(require(rec, "objects", loc, ""), loc, "/objects");
    for (std::size_t k = 0; k < objects.size(); ++k) {
      const std::string op = "/objects/" + std::to_string(k);
      const json& obj = objects[k];
      GroundTruthObject gt;
      gt.frame_id = frame.frame_id;
      const auto cls = as_int(require(obj, "class_id", loc, op), loc, op + "/class_id");
      if (cls < 0) fail(loc, op + "/class_id", "class_id must be non-negative");
      if (!out.manifest.class_names.empty() &&
          static_cast<std::size_t>(cls) >= out.manifest.class_names.size()) {
        fail(loc, op + "/class_id", "class_id beyond the class list");
      }
      gt.class_id = static_cast<std::size_t>(cls);
      gt.mask = parse_mask(require(obj, "mask", loc, op), frame.width, frame.height, loc, op + "/mask");
      const auto hull = gt.mask.hull();
      if (!hull) fail(loc, op + "/mask", "mask has no foreground pixels");
      if (const json* bbox = optional_field(obj, "bbox")) {
        gt.box = parse_bbox(*bbox, loc, op + "/bbox");
        if (hull->x1 < gt.box.x1 - 0.5 || hull->y1 < gt.box.y1 - 0.5 ||
            hull->x2 > gt.box.x2 + 0.5 || hull->y2 > gt.box.y2 + 0.5) {
          fail(loc, op, "frame '" + frame.frame_id + "' object " + std::to_string(k) +
                            ": mask extends outside its bbox");
        }
      } else {
        gt.box = *hull;
      }
      frame.ground_truths.push_back(std::move(gt));
    }
    try {
      out.manifest.add_frame({frame.frame_id, frame.width, frame.height});
      validate_frame(frame, out.manifest.class_names.empty() ? static_cast<std::size_t>(-1)
                                                             : out.manifest.class_names.size());
    } catch (const InputError& e) {
      fail(loc, "", e.what());
    }
    out.frames.push_back(std::move(frame));
  });
  return out;
}

GroundTruthSet load_ground_truth(const std::filesystem::path& path) {
  auto in = open_input(path);
  return parse_ground_truth(in, path.string());
}

DetectionSet parse_detections(std::istream& in, const std::string& source,
                              const DatasetManifest* manifest) {
  DetectionSet out;
  std::unordered_map<std::string, std::size_t> seen;
  std::optional<std::size_t> num_classes;
  if (manifest != nullptr && !manifest->class_names.empty()) {
    num_classes = manifest->class_names.size();
  }
  for_each_record(in, source, [&](const json& rec, const Loc& loc) {
    FrameDetections fd;
    fd.frame_id = as_frame_id(require(rec, "frame_id", loc, ""), loc, "/frame_id");
    std::optional<FrameInfo> info;
    if (manifest != nullptr) {
      const auto idx = manifest->find(fd.frame_id);
      if (!idx) fail(loc, "/frame_id", "unknown frame '" + fd.frame_id + "'");
      info = manifest->frames()[*idx];
    }
    if (seen.contains(fd.frame_id)) {
      fail(loc, "/frame_id", "duplicate detection record for frame '" + fd.frame_id + "'");
    }
    seen.emplace(fd.frame_id, out.size());

    const json& dets = as_array(require(rec, "detections", loc, ""), loc, "/detections");
    for (std::size_t j = 0; j < dets.size(); ++j) {
      const std::string dp = "/detections/" + std::to_string(j);
      const json& dj = dets[j];
      Detection d;
      d.frame_id = fd.frame_id;
      const json& probs_json = as_array(require(dj, "label_probs", loc, dp), loc, dp + "/label_probs");
      std::vector<double> probs;
      probs.reserve(probs_json.size());
      for (std::size_t c = 0; c < probs_json.size(); ++c) {
        probs.push_back(as_number(probs_json[c], loc, dp + "/label_probs/" + std::to_string(c)));
      }
      if (probs.empty()) fail(loc, dp + "/label_probs", "label_probs must not be empty");
      if (!num_classes) num_classes = probs.size();
      if (probs.size() != *num_classes) {
        fail(loc, dp + "/label_probs",
             "expected " + std::to_string(*num_classes) + " entries, got " + std::to_string(probs.size()));
      }
      try {
        d.label_dist = LabelDist(std::move(probs));
      } catch (const InputError& e) {
        fail(loc, dp + "/label_probs", e.what());
      }
      d.pbox.box = parse_bbox(require(dj, "bbox", loc, dp), loc, dp + "/bbox");
      if (const json* covars = optional_field(dj, "covars")) {
        const json& pair = as_array(*covars, loc, dp + "/covars");
        if (pair.size() != 2) fail(loc, dp + "/covars", "expected two corner covariances");
        d.pbox.cov_tl = parse_cov(pair[0], loc, dp + "/covars/0");
        d.pbox.cov_br = parse_cov(pair[1], loc, dp + "/covars/1");
      }
      if (info) {
        const BBox& b = d.pbox.box;
        if (b.x2 < 0.0 || b.y2 < 0.0 || b.x1 > info->width || b.y1 > info->height) {
          fail(loc, dp + "/bbox", "box lies outside the image");
        }
      }
      fd.detections.push_back(std::move(d));
    }
    out.push_back(std::move(fd));
  });
  return out;
}

DetectionSet load_detections(const std::filesystem::path& path, const DatasetManifest& manifest) {
  auto in = open_input(path);
  return parse_detections(in, path.string(), &manifest);
}

DetectionSet load_detections(const std::filesystem::path& path) {
  auto in = open_input(path);
  return parse_detections(in, path.string(), nullptr);
}

void write_ground_truth(std::ostream& out, const GroundTruthSet& gt) {
  if (!gt.manifest.class_names.empty()) {
    ordered_json header;
    header["class_names"] = gt.manifest.class_names;
    out << header.dump() << '\n';
  }
  for (const Frame& f : gt.frames) {
    ordered_json rec;
    rec["frame_id"] = f.frame_id;
    rec["width"] = f.width;
    rec["height"] = f.height;
    ordered_json objects = ordered_json::array();
    for (const auto& g : f.ground_truths) {
      ordered_json o;
      o["class_id"] = g.class_id;
      o["bbox"] = {g.box.x1, g.box.y1, g.box.x2, g.box.y2};
      ordered_json mask;
      mask["size"] = {g.mask.width(), g.mask.height()};
      mask["rle"] = std::vector<std::uint32_t>(g.mask.runs().begin(), g.mask.runs().end());
      o["mask"] = std::move(mask);
      objects.push_back(std::move(o));
    }
    rec["objects"] = std::move(objects);
    out << rec.dump() << '\n';
  }
}

void write_ground_truth(const std::filesystem::path& path, const GroundTruthSet& gt) {
  auto out = open_output(path);
  write_ground_truth(out, gt);
  finish_output(out, path);
}

void write_detections(std::ostream& out, const DetectionSet& dets) {
  for (const auto& fd : dets) {
    ordered_json rec;
    rec["frame_id"] = fd.frame_id;
    ordered_json arr = ordered_json::array();
    for (const auto& d : fd.detections) {
      ordered_json o;
      o["label_probs"] = std::vector<double>(d.label_dist.probs().begin(), d.label_dist.probs().end());
      const BBox& b = d.pbox.box;
      o["bbox"] = {b.x1, b.y1, b.x2, b.y2};
      o["covars"] = {cov_json(d.pbox.cov_tl), cov_json(d.pbox.cov_br)};
      arr.push_back(std::move(o));
    }
    rec["detections"] = std::move(arr);
    out << rec.dump() << '\n';
  }
}

void write_detections(const std::filesystem::path& path, const DetectionSet& dets) {
  auto out = open_output(path);
  write_detections(out, dets);
  finish_output(out, path);
}

std::size_t infer_num_classes(const GroundTruthSet& gt, const DetectionSet& dets) {
  if (!gt.manifest.class_names.empty()) return gt.manifest.class_names.size();
  for (const auto& fd : dets) {
    if (!fd.detections.empty()) return fd.detections.front().label_dist.size();
  }
  std::size_t n = 1;
  for (const auto& f : gt.frames) {
    for (const auto& g : f.ground_truths) n = std::max(n, g.class_id + 1);
  }
  return n;
}

std::vector<Frame> join_frames(const GroundTruthSet& gt, const DetectionSet& dets) {
  if (gt.manifest.frames().size() != gt.frames.size()) {
    throw InputError("ground-truth manifest lists " + std::to_string(gt.manifest.frames().size()) +
                     " frames but the set holds " + std::to_string(gt.frames.size()));
  }
  std::vector<Frame> frames = gt.frames;
  std::vector<char> filled(frames.size(), 0);
  for (const auto& fd : dets) {
    const auto idx = gt.manifest.find(fd.frame_id);
    if (!idx) throw InputError("detections reference unknown frame '" + fd.frame_id + "'");
    if (filled[*idx]) throw InputError("duplicate detection record for frame '" + fd.frame_id + "'");
    filled[*idx] = 1;
    frames[*idx].detections = fd.detections;
  }
  const std::size_t num_classes = infer_num_classes(gt, dets);
  for (const auto& f : frames) validate_frame(f, num_classes);
  return frames;
}

SegMask rasterize_polygons(int width, int height, const std::vector<std::vector<double>>& polygons) {
  if (width <= 0 || height <= 0) throw DecodeError("mask size must be positive");
  std::vector<std::uint8_t> bitmap(static_cast<std::size_t>(width) * height, 0);
  std::vector<double> crossings;
  for (int y = 0; y < height; ++y) {
    crossings.clear();
    const double py = y;
    for (const auto& poly : polygons) {
      const std::size_t n = poly.size() / 2;
      for (std::size_t i = 0; i < n; ++i) {
        const double ax = poly[2 * i], ay = poly[2 * i + 1];
        const double bx = poly[2 * ((i + 1) % n)], by = poly[2 * ((i + 1) % n) + 1];
        if ((ay > py) != (by > py)) crossings.push_back(ax + (py - ay) * (bx - ax) / (by - ay));
      }
    }
    std::sort(crossings.begin(), crossings.end());
    // Lattice x is inside when an odd number of crossings lie strictly to its right.
    for (std::size_t i = 0; i + 1 < crossings.size(); i += 2) {
      const int xa = std::max(0, static_cast<int>(std::ceil(crossings[i])));
      const int xb = std::min(width, static_cast<int>(std::ceil(crossings[i + 1])));
      for (int x = xa; x < xb; ++x) bitmap[static_cast<std::size_t>(y) * width + x] ^= 1;
    }
  }
  return SegMask::from_bitmap(width, height, bitmap);
}

double round_sig6(double v) {
  return std::strtod(fmt6(v).c_str(), nullptr);
}

std::string format_report(const PdqReport& r, ReportFormat format) {
  if (format == ReportFormat::Csv) {
    std::ostringstream os;
    os << "pdq,apdq,avg_spatial,avg_label,tp,fp,fn\n";
    os << fmt6(r.pdq) << ',' << fmt6(r.apdq) << ',' << fmt6(r.avg_spatial) << ','
       << fmt6(r.avg_label) << ',' << r.n_tp << ',' << r.n_fp << ',' << r.n_fn << '\n';
    return os.str();
  }
  ordered_json j;
  j["pdq"] = round_sig6(r.pdq);
  j["apdq"] = round_sig6(r.apdq);
  j["avg_spatial"] = round_sig6(r.avg_spatial);
  j["avg_label"] = round_sig6(r.avg_label);
  j["tp"] = r.n_tp;
  j["fp"] = r.n_fp;
  j["fn"] = r.n_fn;
  ordered_json frames = ordered_json::array();
  for (const auto& f : r.per_frame) {
    ordered_json fj;
    fj["frame_id"] = f.frame_id;
    fj["tp"] = f.tp;
    fj["fp"] = f.fp;
    fj["fn"] = f.fn;
    fj["ppdq_sum"] = round_sig6(f.ppdq_sum);
    frames.push_back(std::move(fj));
  }
  j["per_frame"] = std::move(frames);
  return j.dump(2) + "\n";
}

void write_report(const PdqReport& report, const std::filesystem::path& path, ReportFormat format) {
  write_text_file(path, format_report(report, format));
}

PdqReport parse_report(std::string_view text, ReportFormat format) {
  PdqReport r;
  if (format == ReportFormat::Csv) {
    std::istringstream in{std::string(text)};
    std::string header, row;
    std::getline(in, header);
    std::getline(in, row);
    if (header != "pdq,apdq,avg_spatial,avg_label,tp,fp,fn") throw InputError("unexpected report header");
    std::vector<std::string> cells;
    std::stringstream ss(row);
    for (std::string cell; std::getline(ss, cell, ',');) cells.push_back(cell);
    if (cells.size() != 7) throw InputError("report row must have 7 columns");
    try {
      r.pdq = std::stod(cells[0]);
      r.apdq = std::stod(cells[1]);
      r.avg_spatial = std::stod(cells[2]);
      r.avg_label = std::stod(cells[3]);
      r.n_tp = std::stoull(cells[4]);
      r.n_fp = std::stoull(cells[5]);
      r.n_fn = std::stoull(cells[6]);
    } catch (const std::logic_error&) {
      throw InputError("malformed report row '" + row + "'");
    }
    return r;
  }
  json j;
  try {
    j = json::parse(text);
    r.pdq = j.at("pdq").get<double>();
    r.apdq = j.at("apdq").get<double>();
    r.avg_spatial = j.at("avg_spatial").get<double>();
    r.avg_label = j.at("avg_label").get<double>();
    r.n_tp = j.at("tp").get<std::size_t>();
    r.n_fp = j.at("fp").get<std::size_t>();
    r.n_fn = j.at("fn").get<std::size_t>();
    for (const auto& f : j.at("per_frame")) {
      r.per_frame.push_back({f.at("frame_id").get<std::string>(), f.at("tp").get<std::size_t>(),
                             f.at("fp").get<std::size_t>(), f.at("fn").get<std::size_t>(),
                             f.at("ppdq_sum").get<double>()});
    }
  } catch (const json::exception& e) {
    throw InputError(std::string("malformed report: ") + e.what());
  }
  return r;
}

ReportFormat parse_report_format(const std::string& name) {
  if (name == "json") return ReportFormat::Json;
  if (name == "csv") return ReportFormat::Csv;
  throw InputError("report format must be 'json' or 'csv', got '" + name + "'");
}

std::string read_text_file(const std::filesystem::path& path) {
  auto in = open_input(path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_text_file(const std::filesystem::path& path, std::string_view text) {
  auto out = open_output(path);
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  finish_output(out, path);
}

}  // namespace pdq
