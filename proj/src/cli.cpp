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

#include "pdq/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cstdio>
#include <optional>
#include <ostream>

#include "pdq/io.hpp"
#include "pdq/metric.hpp"
#include "pdq/parallel.hpp"
#include "pdq/sweep.hpp"
#include "pdq/synth.hpp"

namespace pdq {
namespace {

struct EvaluateArgs {
  std::string gt;
  std::string det;
  std::string out;
  std::string format = "json";
  std::optional<unsigned> threads;
  double k_sigma = kDefaultSupportSigmas;
};

struct PostprocessArgs {
  std::string det;
  std::string config;
  std::string out;
};

struct SweepArgs {
  std::string gt;
  std::string det;
  std::string spec;
  std::string out;
  std::optional<unsigned> threads;
  double k_sigma = kDefaultSupportSigmas;
};

struct SynthArgs {
  SynthOptions opts;
  std::string noise = "none";
  std::string mask_shape = "rect";
  std::string out_gt;
  std::string out_det;
};

std::string headline(const PdqReport& r) {
  char buf[256];
  std::snprintf(buf, sizeof(buf), "PDQ %.6f  aPDQ %.6f  spatial %.6f  label %.6f  TP %zu  FP %zu  FN %zu",
                r.pdq, r.apdq, r.avg_spatial, r.avg_label, r.n_tp, r.n_fp, r.n_fn);
  return buf;
}

int cmd_evaluate(const EvaluateArgs& a, std::ostream& out) {
  const auto format = parse_report_format(a.format);
  const GroundTruthSet gt = load_ground_truth(a.gt);
  const DetectionSet dets = load_detections(a.det, gt.manifest);
  const auto frames = join_frames(gt, dets);
  EvalOptions opts;
  opts.k_sigma = a.k_sigma;
  opts.threads = resolve_thread_count(a.threads);
  const PdqReport report = evaluate(frames, opts);
  if (!a.out.empty()) write_report(report, a.out, format);
  out << headline(report) << '\n';
  return kExitOk;
}

int cmd_postprocess(const PostprocessArgs& a, std::ostream& out) {
  PostProcessConfig cfg;
  if (!a.config.empty()) cfg = parse_postprocess_config(read_text_file(a.config));
  const DetectionSet raw = load_detections(a.det);
  const DetectionSet processed = apply_pipeline(raw, cfg);
  write_detections(a.out, processed);
  std::size_t n_in = 0, n_out = 0;
  for (const auto& fd : raw) n_in += fd.detections.size();
  for (const auto& fd : processed) n_out += fd.detections.size();
  out << "postprocessed " << raw.size() << " frames: " << n_in << " -> " << n_out << " detections\n";
  return kExitOk;
}

int cmd_sweep(const SweepArgs& a, std::ostream& out) {
  const SweepSpec spec = parse_sweep_spec(read_text_file(a.spec));
  const GroundTruthSet gt = load_ground_truth(a.gt);
  const DetectionSet raw = load_detections(a.det, gt.manifest);
  const auto rows = run_sweep(gt, raw, spec, resolve_thread_count(a.threads), a.k_sigma);
  write_text_file(a.out, format_sweep_csv(rows));
  if (!rows.empty()) {
    out << rows.size() << " grid points; best: " << rows.front().config.cov_mode.to_string()
        << " threshold " << rows.front().config.score_threshold << " shrink "
        << rows.front().config.shrink_factor << "\n"
        << headline(rows.front().report) << '\n';
  }
  return kExitOk;
}

int cmd_synth(SynthArgs a, std::ostream& out) {
  a.opts.noise = NoiseProfile::parse(a.noise);
  a.opts.mask_shape = parse_mask_shape(a.mask_shape);
  const SynthData data = synthesize(a.opts);
  write_ground_truth(a.out_gt, data.ground_truth);
  write_detections(a.out_det, data.detections);
  std::size_t n_obj = 0, n_det = 0;
  for (const auto& f : data.ground_truth.frames) n_obj += f.ground_truths.size();
  for (const auto& fd : data.detections) n_det += fd.detections.size();
  out << "synthesized " << data.ground_truth.frames.size() << " frames, " << n_obj << " objects, "
      << n_det << " detections\n";
  return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Probability-based detection quality evaluation and post-processing", "pdq_eval"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kVersion);

  EvaluateArgs ev;
  auto* evaluate_cmd = app.add_subcommand("evaluate", "Score detections against ground truth");
  evaluate_cmd->add_option("--gt", ev.gt, "Ground-truth JSONL")->required();
  evaluate_cmd->add_option("--det", ev.det, "Detections JSONL")->required();
  evaluate_cmd->add_option("--out", ev.out, "Report output path");
  evaluate_cmd->add_option("--format", ev.format, "Report format")->check(CLI::IsMember({"json", "csv"}));
  evaluate_cmd->add_option("--threads", ev.threads, "Worker threads (0 = all cores; default $PDQ_THREADS or 1)");
  evaluate_cmd->add_option("--k-sigma", ev.k_sigma, "Heatmap support radius in standard deviations")
      ->check(CLI::PositiveNumber);

  PostprocessArgs pp;
  auto* post_cmd = app.add_subcommand("postprocess", "Apply the post-processing pipeline to detections");
  post_cmd->add_option("--det", pp.det, "Raw detections JSONL")->required();
  post_cmd->add_option("--config", pp.config, "Pipeline config JSON");
  post_cmd->add_option("--out", pp.out, "Output detections JSONL")->required();

  SweepArgs sw;
  auto* sweep_cmd = app.add_subcommand("sweep", "Evaluate a grid of pipeline configurations");
  sweep_cmd->add_option("--gt", sw.gt, "Ground-truth JSONL")->required();
  sweep_cmd->add_option("--det", sw.det, "Raw detections JSONL")->required();
  sweep_cmd->add_option("--spec", sw.spec, "Sweep spec JSON")->required();
  sweep_cmd->add_option("--out", sw.out, "Output CSV")->required();
  sweep_cmd->add_option("--threads", sw.threads, "Grid-point workers");
  sweep_cmd->add_option("--k-sigma", sw.k_sigma, "Heatmap support radius")->check(CLI::PositiveNumber);

  SynthArgs sy;
  auto* synth_cmd = app.add_subcommand("synth", "Generate a seeded synthetic fixture");
  synth_cmd->add_option("--frames", sy.opts.frames, "Frame count")->check(CLI::PositiveNumber);
  synth_cmd->add_option("--objects-per-frame", sy.opts.max_objects, "Maximum objects per frame")
      ->check(CLI::PositiveNumber);
  synth_cmd->add_option("--noise", sy.noise, "Noise preset and/or key=value overrides");
  synth_cmd->add_option("--mask-shape", sy.mask_shape, "Object mask shape")
      ->check(CLI::IsMember({"rect", "ellipse"}));
  synth_cmd->add_option("--seed", sy.opts.seed, "PRNG seed");
  synth_cmd->add_option("--width", sy.opts.width, "Frame width")->check(CLI::Range(2, 1 << 16));
  synth_cmd->add_option("--height", sy.opts.height, "Frame height")->check(CLI::Range(2, 1 << 16));
  synth_cmd->add_option("--classes", sy.opts.num_classes, "Class count")->check(CLI::PositiveNumber);
  synth_cmd->add_option("--out-gt", sy.out_gt, "Ground-truth output")->required();
  synth_cmd->add_option("--out-det", sy.out_det, "Detections output")->required();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForVersion&) {
    out << kVersion << '\n';
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitValidation;
  }

  try {
    if (*evaluate_cmd) return cmd_evaluate(ev, out);
    if (*post_cmd) return cmd_postprocess(pp, out);
    if (*sweep_cmd) return cmd_sweep(sw, out);
    if (*synth_cmd) return cmd_synth(sy, out);
  } catch (const IoError& e) {
    err << "I/O error: " << e.what() << '\n';
    return kExitIo;
  } catch (const InputError& e) {
    err << "validation error: " << e.what() << '\n';
    return kExitValidation;
  }
  return kExitValidation;
}

}  // namespace pdq
