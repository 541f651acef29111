#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "ctslim/metrics.hpp"
#include "ctslim/phantom.hpp"
#include "ctslim/pipeline.hpp"
#include "ctslim/rng.hpp"

namespace fs = std::filesystem;

namespace {

struct RunArgs {
  std::string input, out, labels, out_size;
  ctslim::pipeline::RunOptions options;
  std::string mode = "kds";
  int n_c = 0;  // 0 = unconstrained
};

int cmd_run(RunArgs& args) {
  auto& cfg = args.options.config;
  if (!args.out_size.empty()) {
    if (std::sscanf(args.out_size.c_str(), "%dx%d", &cfg.out_h, &cfg.out_w) != 2)
      throw ctslim::Error("bad --out-size, expected HxW like 384x384");
  }
  if (args.n_c > 0) cfg.n_c = args.n_c;
  if (args.mode == "kds")
    cfg.sampling_mode = ctslim::SamplingMode::kKds;
  else if (args.mode == "random")
    cfg.sampling_mode = ctslim::SamplingMode::kRandom;
  else if (args.mode == "none")
    cfg.sampling_mode = ctslim::SamplingMode::kNone;
  else
    throw ctslim::Error("bad --mode, expected kds|random|none");
  if (!args.labels.empty()) args.options.labels_csv = args.labels;

  const auto result = ctslim::pipeline::run_pipeline(args.input, args.out, args.options);
  const int ok = static_cast<int>(result.outcomes.size()) - result.failed;
  std::cout << "processed " << ok << "/" << result.outcomes.size() << " scans";
  if (!result.report_json.empty()) std::cout << ", report at " << result.report_json.string();
  std::cout << "\n";
  if (!result.report_text.empty()) {
    std::ifstream report(result.report_text);
    std::cout << report.rdbuf();
  }
  return result.failed == 0 ? 0 : 1;
}

struct PhantomArgs {
  std::string out, size = "512x512";
  int scans = 1;
  ctslim::phantom::PhantomSpec spec;
};

int cmd_phantom(PhantomArgs& args) {
  if (std::sscanf(args.size.c_str(), "%dx%d", &args.spec.height, &args.spec.width) != 2)
    throw ctslim::Error("bad --size, expected HxW like 512x512");
  args.spec.validate();
  fs::create_directories(args.out);
  const std::uint64_t base_seed = args.spec.seed;
  for (int i = 0; i < args.scans; ++i) {
    char id[32];
    std::snprintf(id, sizeof(id), "phantom_%03d", i);
    ctslim::phantom::PhantomSpec spec = args.spec;
    spec.seed = ctslim::derive_scan_seed(base_seed, id);
    const auto truth = ctslim::phantom::generate_phantom(spec, fs::path(args.out) / id);
    std::ofstream(fs::path(args.out) / (std::string(id) + ".truth.json"))
        << ctslim::phantom::truth_to_json(truth, spec);
    std::cout << "wrote " << id << " (" << spec.slices << " slices)\n";
  }
  return 0;
}

struct ScoreArgs {
  std::string pred, labels, out;
  double threshold = 0.5;
  bool scan_level = false;
};

int cmd_score(ScoreArgs& args) {
  namespace metrics = ctslim::metrics;
  auto records = metrics::join_predictions(args.pred, args.labels);
  if (args.scan_level) records = metrics::aggregate_by_scan(records);

  const double bce = metrics::bce_loss(records);
  const auto f1 = metrics::f1_score(records, args.threshold);
  const auto auc = metrics::rank_auc(records);

  nlohmann::json doc{{"schema", 1},
                     {"records", records.size()},
                     {"threshold", args.threshold},
                     {"scan_level", args.scan_level},
                     {"bce", bce},
                     {"f1_positive", f1.f1_pos},
                     {"f1_negative", f1.f1_neg},
                     {"macro_f1", f1.macro_f1},
                     {"precision_positive", f1.precision_pos},
                     {"recall_positive", f1.recall_pos},
                     {"precision_negative", f1.precision_neg},
                     {"recall_negative", f1.recall_neg},
                     {"zero_division", f1.zero_division},
                     {"confusion", {{"tp", f1.tp}, {"fp", f1.fp}, {"fn", f1.fn}, {"tn", f1.tn}}}};
  if (auc)
    doc["auc"] = *auc;
  else
    doc["auc"] = nullptr;

  std::cout << doc.dump(2) << "\n";
  if (!args.out.empty()) std::ofstream(args.out) << doc.dump(2) << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Volumetric slice-stack reduction: spatial/slice redundancy removal "
               "with density-aware slice sampling"};
  app.require_subcommand(1);

  RunArgs run_args;
  auto* run = app.add_subcommand("run", "Reduce every scan directory under a dataset root");
  run->add_option("--input", run_args.input, "Dataset root: one subdirectory per scan")->required();
  run->add_option("--out", run_args.out, "Output root")->required();
  auto& cfg = run_args.options.config;
  run->add_option("--k", cfg.k, "Low-pass filter half-window (pixels)");
  run->add_option("--t", cfg.t, "Segmentation threshold (intensity)");
  run->add_option("--alpha", cfg.alpha, "Slice-window area proportion in (0,1]");
  run->add_option("--n-c,--n_c", run_args.n_c, "Max window length in slices (0 = unconstrained)");
  run->add_option("--samples,--n_samples", cfg.n_samples, "Slices sampled per scan");
  run->add_option("--mode,--sampling_mode", run_args.mode, "Sampling mode: kds|random|none");
  run->add_option("--seed", cfg.seed, "Run seed for reproducible sampling");
  run->add_option("--out-size,--out_size", run_args.out_size, "Resize target HxW (default 384x384)");
  run->add_option("--dilate-radius,--dilate_radius", cfg.dilate_radius,
                  "Dilation radius before hole filling");
  run->add_option("--grid-size,--grid_size", cfg.grid_size, "KDE evaluation grid size");
  run->add_flag("--per-slice-crop,--per_slice_crop", cfg.per_slice_crop,
                "Crop each slice by its own box instead of the scan union");
  run->add_option("--labels", run_args.labels, "Optional scan labels CSV: id,label");
  run->add_option("--jobs", run_args.options.jobs, "Worker pool size (0 = hardware)");
  run->add_flag("--quiet", run_args.options.quiet, "Suppress per-scan progress lines");
  run->set_config("--config", "", "TOML config file; command-line flags override it");

  PhantomArgs phantom_args;
  auto* phantom = app.add_subcommand("phantom", "Generate synthetic scans with known lung areas");
  phantom->add_option("--out", phantom_args.out, "Output dataset root")->required();
  phantom->add_option("--scans", phantom_args.scans, "Number of scans")->check(CLI::PositiveNumber);
  phantom->add_option("--slices", phantom_args.spec.slices, "Slices per scan");
  phantom->add_option("--size", phantom_args.size, "Slice size HxW");
  phantom->add_option("--noise", phantom_args.spec.noise, "Uniform +/- intensity noise");
  phantom->add_option("--seed", phantom_args.spec.seed, "Base seed");
  phantom->add_option("--lung-a", phantom_args.spec.lung_a_frac,
                      "Max lung column semi-axis / width (0 disables lungs)");
  phantom->add_option("--lung-b", phantom_args.spec.lung_b_frac,
                      "Max lung row semi-axis / height (0 disables lungs)");
  phantom->add_option("--profile-power", phantom_args.spec.profile_power,
                      "Sharpness of the mid-stack area peak");

  ScoreArgs score_args;
  auto* score = app.add_subcommand("score", "Score predictions against labels");
  score->add_option("--pred", score_args.pred, "Predictions file: id,probability")->required();
  score->add_option("--labels", score_args.labels, "Labels file: id,label")->required();
  score->add_option("--threshold", score_args.threshold, "Binarization threshold");
  score->add_flag("--scan-level", score_args.scan_level,
                  "Aggregate slice ids of the form scan/slice by mean probability");
  score->add_option("--out", score_args.out, "Also write the JSON report here");

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed()) return cmd_run(run_args);
    if (phantom->parsed()) return cmd_phantom(phantom_args);
    if (score->parsed()) return cmd_score(score_args);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
