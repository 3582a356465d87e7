// Copyright 2026 The vesselseg Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Batch front end over the vesselseg core library: dataset segmentation,
// evaluation against manual ground truth, ROC sweeps and synthetic phantoms.

#include <CLI11.hpp>

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "vesselseg/config.hpp"
#include "vesselseg/dataset.hpp"
#include "vesselseg/evaluation.hpp"
#include "vesselseg/image_io.hpp"
#include "vesselseg/phantom.hpp"
#include "vesselseg/pipeline.hpp"

namespace fs = std::filesystem;
using namespace vesselseg;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitImageFailure = 1;
constexpr int kExitConfigError = 2;

struct CommonOpts {
  std::string config_path;
  std::string input_dir;
  std::string layout = "flat";
  RunConfig overrides;  // staging area for flag values
  bool has_out = false;
  bool write_histeq = false;
};

void add_common_flags(CLI::App* cmd, CommonOpts& opts, bool needs_input) {
  cmd->add_option("--config", opts.config_path, "Config file (key = value lines)");
  auto* in = cmd->add_option("--input", opts.input_dir, "Dataset directory");
  if (needs_input) in->required();
  cmd->add_option("--layout", opts.layout, "Dataset layout: drive, stare or flat")
      ->check(CLI::IsMember({"drive", "stare", "flat"}));
  cmd->add_option("--out", opts.overrides.out_dir, "Output directory")
      ->each([&opts](const std::string&) { opts.has_out = true; });
  cmd->add_option("--threads", opts.overrides.threads,
                  "Worker count (0 = logical processors)");
  cmd->add_option("--t", opts.overrides.thickness, "Vessel thickness in pixels");
  cmd->add_option("--beta", opts.overrides.beta, "Gabor pass-band factor [0.5, 1]");
  cmd->add_option("--levels", opts.overrides.levels, "Quantization levels [2, 256]");
  cmd->add_option("--roc-step", opts.overrides.roc_step, "Threshold step of the ROC sweep");
  cmd->add_option("--mask-threshold", opts.overrides.pre.mask_threshold,
                  "Fundus mask gray threshold");
  cmd->add_option("--prefilter-side", opts.overrides.pre.prefilter_side,
                  "Median prefilter window side");
  cmd->add_option("--clahe-tile", opts.overrides.pre.clahe_tile,
                  "CLAHE tile side in px (0 = 8x8 grid)");
  cmd->add_option("--clahe-clip", opts.overrides.pre.clahe_clip, "CLAHE clip factor");
  cmd->add_option("--orientation-step", opts.overrides.orientation_step,
                  "Degrees between bank orientations");
  cmd->add_flag("--invert", opts.overrides.invert,
                "Invert the enhanced image (vessels darker than background)");
  cmd->add_option("--exclude", opts.overrides.exclude,
                  "Record ids to skip (repeatable)");
}

// File values first, then any flag the user actually passed on top.
RunConfig resolve_config(const CLI::App* cmd, const CommonOpts& opts) {
  RunConfig cfg;
  if (!opts.config_path.empty()) cfg = load_run_config(opts.config_path);

  const auto passed = [cmd](const std::string& flag) {
    return cmd->count(flag) > 0;
  };
  if (passed("--threads")) cfg.threads = opts.overrides.threads;
  if (passed("--t")) cfg.thickness = opts.overrides.thickness;
  if (passed("--beta")) cfg.beta = opts.overrides.beta;
  if (passed("--levels")) cfg.levels = opts.overrides.levels;
  if (passed("--roc-step")) cfg.roc_step = opts.overrides.roc_step;
  if (passed("--mask-threshold")) cfg.pre.mask_threshold = opts.overrides.pre.mask_threshold;
  if (passed("--prefilter-side")) cfg.pre.prefilter_side = opts.overrides.pre.prefilter_side;
  if (passed("--clahe-tile")) cfg.pre.clahe_tile = opts.overrides.pre.clahe_tile;
  if (passed("--clahe-clip")) cfg.pre.clahe_clip = opts.overrides.pre.clahe_clip;
  if (passed("--orientation-step")) cfg.orientation_step = opts.overrides.orientation_step;
  if (passed("--invert")) cfg.invert = opts.overrides.invert;
  if (!opts.overrides.exclude.empty()) cfg.exclude = opts.overrides.exclude;
  if (opts.has_out) cfg.out_dir = opts.overrides.out_dir;
  cfg.validate();
  return cfg;
}

std::vector<DatasetRecord> resolve_records(const CommonOpts& opts,
                                           const RunConfig& cfg) {
  auto records = load_dataset(opts.input_dir, parse_layout(opts.layout));
  std::erase_if(records, [&cfg](const DatasetRecord& r) {
    return std::find(cfg.exclude.begin(), cfg.exclude.end(), r.id) !=
           cfg.exclude.end();
  });
  return records;
}

struct RecordOutcome {
  std::optional<SensSpec> metrics;
  std::optional<std::string> error;
  double seconds = 0.0;
  int width = 0, height = 0;
};

// Runs `work` over every record from a small worker pool. Workers only
// touch their own record slot, so results are position-stable and the
// overall output is independent of the worker count.
template <typename Fn>
std::vector<RecordOutcome> for_each_record(const std::vector<DatasetRecord>& records,
                                           int threads, Fn&& work) {
  std::vector<RecordOutcome> outcomes(records.size());
  if (records.empty()) return outcomes;
  unsigned n = threads > 0 ? static_cast<unsigned>(threads)
                           : std::max(1u, std::thread::hardware_concurrency());
  n = std::min<unsigned>(n, records.size());

  std::atomic<std::size_t> next{0};
  auto body = [&]() {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= records.size()) break;
      try {
        work(records[i], outcomes[i]);
      } catch (const std::exception& e) {
        outcomes[i].error = e.what();
      }
    }
  };
  if (n <= 1) {
    body();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned k = 0; k < n; ++k) pool.emplace_back(body);
  }
  return outcomes;
}

int report_failures(const std::vector<DatasetRecord>& records,
                    const std::vector<RecordOutcome>& outcomes) {
  int failures = 0;
  for (std::size_t i = 0; i < records.size(); ++i) {
    if (outcomes[i].error) {
      std::cerr << "error: " << records[i].id << ": " << *outcomes[i].error
                << "\n";
      ++failures;
    }
  }
  return failures;
}

PipelineResult run_record(const DatasetRecord& rec, const RunConfig& cfg) {
  const FundusImage img = load_fundus(rec.image);
  if (rec.fov) {
    const BinaryMask fov = load_mask(*rec.fov);
    return run_pipeline(img, cfg, &fov);
  }
  return run_pipeline(img, cfg);
}

std::string fmt_rate(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

int run_segment(const CommonOpts& opts, const RunConfig& cfg,
                const std::vector<DatasetRecord>& records) {
  fs::create_directories(cfg.out_dir);
  const auto outcomes = for_each_record(
      records, cfg.threads, [&](const DatasetRecord& rec, RecordOutcome& out) {
        const PipelineResult result = run_record(rec, cfg);
        save_png(cfg.out_dir / (rec.id + ".mask.png"), result.mask);
        save_png(cfg.out_dir / (rec.id + ".response.png"), result.quantized);
        if (opts.write_histeq) {
          const FundusImage img = load_fundus(rec.image);
          save_png(cfg.out_dir / (rec.id + ".histeq.png"),
                   equalize_hist(extract_green(img)));
        }
        out.seconds = result.seconds;
        out.width = result.mask.width();
        out.height = result.mask.height();
      });
  for (std::size_t i = 0; i < records.size(); ++i) {
    if (!outcomes[i].error) {
      std::printf("segment %s %dx%d %.3f s\n", records[i].id.c_str(),
                  outcomes[i].width, outcomes[i].height, outcomes[i].seconds);
    }
  }
  return report_failures(records, outcomes) ? kExitImageFailure : kExitOk;
}

int run_evaluate(const RunConfig& cfg, const std::vector<DatasetRecord>& records) {
  fs::create_directories(cfg.out_dir);
  const auto outcomes = for_each_record(
      records, cfg.threads, [&](const DatasetRecord& rec, RecordOutcome& out) {
        if (!rec.truth) throw std::runtime_error("record has no ground truth");
        const PipelineResult result = run_record(rec, cfg);
        const BinaryMask truth = load_mask(*rec.truth);
        out.metrics = sens_spec(
            contingency(result.mask, truth, scoring_mask(result, cfg)));
      });

  std::vector<SensSpec> rows;
  std::ofstream csv(cfg.out_dir / "metrics.csv");
  if (!csv) throw ConfigError("cannot create metrics.csv");
  csv << "id,sensitivity,specificity\n";
  for (std::size_t i = 0; i < records.size(); ++i) {
    if (!outcomes[i].metrics) continue;
    const SensSpec& s = *outcomes[i].metrics;
    rows.push_back(s);
    csv << records[i].id << ',' << fmt_rate(s.sensitivity) << ','
        << fmt_rate(s.specificity) << "\n";
    std::printf("evaluate %s sensitivity=%.6f specificity=%.6f\n",
                records[i].id.c_str(), s.sensitivity, s.specificity);
  }
  if (!rows.empty()) {
    const AggregateStats a = aggregate(rows);
    csv << "mean," << fmt_rate(a.mean_sensitivity) << ','
        << fmt_rate(a.mean_specificity) << "\n";
    csv << "sd," << fmt_rate(a.sd_sensitivity) << ','
        << fmt_rate(a.sd_specificity) << "\n";
    std::printf("aggregate sensitivity=%.6f +- %.6f specificity=%.6f +- %.6f\n",
                a.mean_sensitivity, a.sd_sensitivity, a.mean_specificity,
                a.sd_specificity);
  }
  return report_failures(records, outcomes) ? kExitImageFailure : kExitOk;
}

int run_roc(const RunConfig& cfg, const std::vector<DatasetRecord>& records) {
  fs::create_directories(cfg.out_dir / "roc");
  const auto outcomes = for_each_record(
      records, cfg.threads, [&](const DatasetRecord& rec, RecordOutcome&) {
        if (!rec.truth) throw std::runtime_error("record has no ground truth");
        const PipelineResult result = run_record(rec, cfg);
        const BinaryMask truth = load_mask(*rec.truth);
        const RocCurve curve =
            roc_curve(result.response, truth, scoring_mask(result, cfg),
                      cfg.roc_step, cfg.levels);
        std::ofstream csv(cfg.out_dir / "roc" / (rec.id + ".csv"));
        if (!csv) throw std::runtime_error("cannot create ROC table");
        csv << "threshold,fpr,tpr\n";
        for (const RocPoint& p : curve.points) {
          csv << p.threshold << ',' << fmt_rate(p.fpr) << ',' << fmt_rate(p.tpr)
              << "\n";
        }
      });
  for (std::size_t i = 0; i < records.size(); ++i) {
    if (!outcomes[i].error) std::printf("roc %s written\n", records[i].id.c_str());
  }
  return report_failures(records, outcomes) ? kExitImageFailure : kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Retinal vessel segmentation: oriented Gabor filter bank with "
               "GLCM entropic thresholding"};
  app.require_subcommand(1);

  CommonOpts seg_opts, eval_opts, roc_opts;
  auto* seg = app.add_subcommand("segment", "Segment vessels in every dataset image");
  add_common_flags(seg, seg_opts, true);
  seg->add_flag("--write-histeq", seg_opts.write_histeq,
                "Also write a plain histogram-equalization image for comparison");

  auto* eval = app.add_subcommand("evaluate", "Score segmentations against ground truth");
  add_common_flags(eval, eval_opts, true);

  auto* roc = app.add_subcommand("roc", "Write per-image ROC tables");
  add_common_flags(roc, roc_opts, true);

  auto* phantom = app.add_subcommand("phantom", "Generate a synthetic vessel image + truth");
  PhantomSpec spec;
  std::string phantom_out = "out";
  std::string phantom_id = "phantom";
  std::string kind_name = "bar";
  unsigned seed = 1;
  phantom->add_option("--out", phantom_out, "Output directory");
  phantom->add_option("--id", phantom_id, "Base name of the written files");
  phantom->add_option("--kind", kind_name, "bar, sinusoid or tree")
      ->check(CLI::IsMember({"bar", "sinusoid", "tree"}));
  phantom->add_option("--width", spec.width, "Image width");
  phantom->add_option("--height", spec.height, "Image height");
  phantom->add_option("--vessel-width", spec.vessel_width, "Vessel width in px");
  phantom->add_option("--contrast", spec.contrast, "Vessel contrast [1, 255]");
  phantom->add_option("--noise-sd", spec.noise_sd, "Additive Gaussian noise sd");
  phantom->add_option("--angle", spec.angle_deg, "Vessel axis in degrees");
  phantom->add_option("--background", spec.background, "Background gray level");
  phantom->add_option("--seed", seed, "Noise seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    app.exit(e);
    return kExitConfigError;
  }

  try {
    if (phantom->parsed()) {
      if (kind_name == "sinusoid") spec.kind = VesselKind::Sinusoid;
      if (kind_name == "tree") spec.kind = VesselKind::Tree;
      const Phantom p = make_phantom(spec, seed);
      fs::create_directories(phantom_out);
      save_png(fs::path(phantom_out) / (phantom_id + ".png"), p.image);
      save_png(fs::path(phantom_out) / (phantom_id + ".truth.png"), p.truth);
      std::printf("phantom %s %dx%d written\n", phantom_id.c_str(), spec.width,
                  spec.height);
      return kExitOk;
    }

    const CLI::App* active = seg->parsed() ? static_cast<CLI::App*>(seg)
                             : eval->parsed() ? static_cast<CLI::App*>(eval)
                                              : static_cast<CLI::App*>(roc);
    const CommonOpts& opts = seg->parsed()   ? seg_opts
                             : eval->parsed() ? eval_opts
                                              : roc_opts;
    const RunConfig cfg = resolve_config(active, opts);
    const std::vector<DatasetRecord> records = resolve_records(opts, cfg);
    if (records.empty()) {
      std::cerr << "error: no dataset records under " << opts.input_dir << "\n";
      return kExitConfigError;
    }
    if (seg->parsed()) return run_segment(opts, cfg, records);
    if (eval->parsed()) return run_evaluate(cfg, records);
    return run_roc(cfg, records);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfigError;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfigError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitImageFailure;
  }
}
