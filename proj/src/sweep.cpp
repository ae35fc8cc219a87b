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

#include "pdq/sweep.hpp"

#include <json.hpp>

#include <algorithm>
#include <cstdio>
#include <sstream>

#include "pdq/parallel.hpp"

namespace pdq {
namespace {

using json = nlohmann::json;
using ordered_json = nlohmann::ordered_json;

double get_number(const json& v, const std::string& where) {
  if (!v.is_number()) throw InputError(where + ": expected a number");
  return v.get<double>();
}

bool get_bool(const json& v, const std::string& where) {
  if (!v.is_boolean()) throw InputError(where + ": expected true or false");
  return v.get<bool>();
}

std::string get_string(const json& v, const std::string& where) {
  if (!v.is_string()) throw InputError(where + ": expected a string");
  return v.get<std::string>();
}

json parse_json(std::string_view text, const char* what) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw InputError(std::string("malformed ") + what + ": " + e.what());
  }
}

PostProcessConfig config_from_json(const json& j, const std::string& where) {
  if (!j.is_object()) throw InputError(where + ": expected an object");
  PostProcessConfig cfg;
  for (const auto& [key, v] : j.items()) {
    const std::string at = where + "/" + key;
    if (key == "score_threshold") cfg.score_threshold = get_number(v, at);
    else if (key == "set_scores_to_one") cfg.set_scores_to_one = get_bool(v, at);
    else if (key == "recover_confusing") cfg.recover_confusing = get_bool(v, at);
    else if (key == "recover_iou_threshold") cfg.recover_iou_threshold = get_number(v, at);
    else if (key == "recover_score_floor") cfg.recover_score_floor = get_number(v, at);
    else if (key == "shrink_factor") cfg.shrink_factor = get_number(v, at);
    else if (key == "cov_mode") cfg.cov_mode = CovMode::parse(get_string(v, at));
    else if (key == "cov_entries") cfg.cov_entries = parse_cov_entries(get_string(v, at));
    else throw InputError(at + ": unknown config key");
  }
  cfg.validate();
  return cfg;
}

template <typename T, typename Get>
std::vector<T> axis(const json& j, const char* key, Get get) {
  std::vector<T> out;
  const auto it = j.find(key);
  if (it == j.end()) return out;
  const std::string where = std::string("/") + key;
  if (!it->is_array()) throw InputError(where + ": expected an array");
  if (it->empty()) throw InputError(where + ": axis must not be empty");
  for (std::size_t i = 0; i < it->size(); ++i) out.push_back(get((*it)[i], where + "/" + std::to_string(i)));
  return out;
}

std::string fmt6(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

}  // namespace

PostProcessConfig parse_postprocess_config(std::string_view json_text) {
  return config_from_json(parse_json(json_text, "config"), "");
}

std::string format_postprocess_config(const PostProcessConfig& cfg) {
  ordered_json j;
  j["score_threshold"] = cfg.score_threshold;
  j["set_scores_to_one"] = cfg.set_scores_to_one;
  j["recover_confusing"] = cfg.recover_confusing;
  j["recover_iou_threshold"] = cfg.recover_iou_threshold;
  j["recover_score_floor"] = cfg.recover_score_floor;
  j["shrink_factor"] = cfg.shrink_factor;
  j["cov_mode"] = cfg.cov_mode.to_string();
  j["cov_entries"] = to_string(cfg.cov_entries);
  return j.dump(2) + "\n";
}

DetectionSet apply_pipeline(const DetectionSet& raw, const PostProcessConfig& cfg) {
  DetectionSet out;
  out.reserve(raw.size());
  for (const auto& fd : raw) out.push_back({fd.frame_id, run_pipeline(fd.detections, cfg)});
  return out;
}

SweepSpec SweepSpec::single(const PostProcessConfig& base) {
  SweepSpec s;
  s.base = base;
  return s;
}

std::size_t SweepSpec::combinations() const {
  auto n = [](std::size_t k) { return std::max<std::size_t>(k, 1); };
  return n(score_threshold.size()) * n(cov_mode.size()) * n(shrink_factor.size()) *
         n(set_scores_to_one.size()) * n(recover_confusing.size());
}

void SweepSpec::validate() const {
  base.validate();
  for (double v : score_threshold) {
    PostProcessConfig c = base;
    c.score_threshold = v;
    c.validate();
  }
  for (const auto& m : cov_mode) {
    PostProcessConfig c = base;
    c.cov_mode = m;
    c.validate();
  }
  for (double v : shrink_factor) {
    PostProcessConfig c = base;
    c.shrink_factor = v;
    c.validate();
  }
  const std::size_t n = combinations();
  if (n > max_combinations) {
    throw InputError("sweep grid has " + std::to_string(n) + " combinations, above the cap of " +
                     std::to_string(max_combinations));
  }
}

std::vector<PostProcessConfig> SweepSpec::grid() const {
  validate();
  auto or_base = [](const auto& values, auto fallback) {
    using V = typename std::decay_t<decltype(values)>::value_type;
    return values.empty() ? std::vector<V>{fallback} : std::vector<V>(values.begin(), values.end());
  };
  const auto thr = or_base(score_threshold, base.score_threshold);
  const auto cov = or_base(cov_mode, base.cov_mode);
  const auto shr = or_base(shrink_factor, base.shrink_factor);
  const auto one = or_base(set_scores_to_one, base.set_scores_to_one);
  const auto rec = or_base(recover_confusing, base.recover_confusing);

  std::vector<PostProcessConfig> out;
  for (double t : thr)
    for (const CovMode& c : cov)
      for (double s : shr)
        for (bool o : one)
          for (bool r : rec) {
            PostProcessConfig cfg = base;
            cfg.score_threshold = t;
            cfg.cov_mode = c;
            cfg.shrink_factor = s;
            cfg.set_scores_to_one = o;
            cfg.recover_confusing = r;
            cfg.validate();
            out.push_back(cfg);
          }
  return out;
}

SweepSpec parse_sweep_spec(std::string_view json_text) {
  const json j = parse_json(json_text, "sweep spec");
  if (!j.is_object()) throw InputError("sweep spec must be a JSON object");
  static const char* kKnown[] = {"score_threshold",   "cov_mode",          "shrink_factor",
                                 "set_scores_to_one", "recover_confusing", "base",
                                 "max_combinations"};
  for (const auto& [key, v] : j.items()) {
    if (std::find_if(std::begin(kKnown), std::end(kKnown), [&](const char* k) { return key == k; }) ==
        std::end(kKnown)) {
      throw InputError("/" + key + ": unknown sweep spec key");
    }
  }
  SweepSpec s;
  if (const auto it = j.find("base"); it != j.end()) s.base = config_from_json(*it, "/base");
  s.score_threshold = axis<double>(j, "score_threshold", get_number);
  s.shrink_factor = axis<double>(j, "shrink_factor", get_number);
  s.set_scores_to_one = axis<bool>(j, "set_scores_to_one", get_bool);
  s.recover_confusing = axis<bool>(j, "recover_confusing", get_bool);
  s.cov_mode = axis<CovMode>(j, "cov_mode", [](const json& v, const std::string& where) {
    return CovMode::parse(get_string(v, where));
  });
  if (const auto it = j.find("max_combinations"); it != j.end()) {
    if (!it->is_number_unsigned()) throw InputError("/max_combinations: expected a positive integer");
    s.max_combinations = it->get<std::size_t>();
  }
  s.validate();
  return s;
}

std::vector<SweepRow> run_sweep(const GroundTruthSet& gt, const DetectionSet& raw,
                                const SweepSpec& spec, unsigned threads, double k_sigma) {
  const auto configs = spec.grid();
  std::vector<SweepRow> rows(configs.size());
  EvalOptions opts;
  opts.k_sigma = k_sigma;
  opts.threads = 1;
  parallel_for(configs.size(), threads, [&](std::size_t i) {
    const auto frames = join_frames(gt, apply_pipeline(raw, configs[i]));
    rows[i] = SweepRow{i, configs[i], evaluate(frames, opts), false};
  });
  std::stable_sort(rows.begin(), rows.end(),
                   [](const SweepRow& a, const SweepRow& b) { return a.report.pdq > b.report.pdq; });
  if (!rows.empty()) rows.front().best = true;
  return rows;
}

std::string format_sweep_csv(const std::vector<SweepRow>& rows) {
  std::ostringstream os;
  os << "best,grid_index,score_threshold,set_scores_to_one,recover_confusing,cov_mode,"
        "shrink_factor,pdq,apdq,avg_spatial,avg_label,tp,fp,fn\n";
  for (const auto& r : rows) {
    const auto& c = r.config;
    const auto& p = r.report;
    os << (r.best ? 1 : 0) << ',' << r.grid_index << ',' << fmt6(c.score_threshold) << ','
       << (c.set_scores_to_one ? 1 : 0) << ',' << (c.recover_confusing ? 1 : 0) << ','
       << c.cov_mode.to_string() << ',' << fmt6(c.shrink_factor) << ',' << fmt6(p.pdq) << ','
       << fmt6(p.apdq) << ',' << fmt6(p.avg_spatial) << ',' << fmt6(p.avg_label) << ',' << p.n_tp
       << ',' << p.n_fp << ',' << p.n_fn << '\n';
  }
  return os.str();
}

}  // namespace pdq
