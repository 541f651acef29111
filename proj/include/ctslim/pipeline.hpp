#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "ctslim/config.hpp"
#include "ctslim/report.hpp"

namespace ctslim {
namespace pipeline {

struct RunOptions {
  PipelineConfig config;
  int jobs = 0;  // worker pool size; 0 = available parallelism
  std::optional<std::filesystem::path> labels_csv;
  bool quiet = false;
};

struct ScanOutcome {
  std::string scan_id;
  bool ok = false;
  std::string error;  // set when !ok
  report::ReductionRecord record;
};

struct RunResult {
  std::vector<ScanOutcome> outcomes;
  int failed = 0;
  std::filesystem::path report_json;
  std::filesystem::path report_text;
};

// Full analysis of one scan, kept so the CLI and tests can run stages
// in-process. Streaming: only per-slice statistics are retained.
struct ScanAnalysis {
  std::string scan_id;
  std::vector<std::filesystem::path> files;
  int height = 0, width = 0;
  std::vector<CropRect> slice_rects;   // per-slice; empty-mask slices get full frame
  std::vector<int> empty_mask_slices;
  bool all_masks_empty = false;
  CropRect union_crop;
  AreaProfile profile;
  SliceWindow window;
  bool degenerate = false;  // zero total area; centered fallback window
  DensityEstimate density;  // only populated for kds sampling
  SampleSelection selection;
  std::uint64_t scan_seed = 0;
};

ScanAnalysis analyze_scan(const std::filesystem::path& scan_dir, const PipelineConfig& config);

// Runs ingest -> spatial -> slice -> sampling -> write for every scan
// directory under dataset_root. Each scan commits atomically (staging dir
// renamed into place); failures are logged, skipped, and counted. Writes
// report.json and report.txt under out_root. Throws if dataset_root has no
// scan directories or the config is invalid.
RunResult run_pipeline(const std::filesystem::path& dataset_root,
                       const std::filesystem::path& out_root, const RunOptions& options);

}  // namespace pipeline
}  // namespace ctslim
