#include "ctslim/pipeline.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <fstream>
#include <iostream>
#include <map>
#include <mutex>
#include <thread>

#include <nlohmann/json.hpp>

#include "ctslim/codec.hpp"
#include "ctslim/metrics.hpp"
#include "ctslim/morphology.hpp"
#include "ctslim/rng.hpp"
#include "ctslim/scan.hpp"
#include "ctslim/spatial.hpp"

namespace fs = std::filesystem;

namespace ctslim {
namespace pipeline {

using nlohmann::json;

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

json rect_to_json(const CropRect& r) {
  return json{{"row_min", r.row_min}, {"row_max", r.row_max},
              {"col_min", r.col_min}, {"col_max", r.col_max}};
}

json config_to_json(const PipelineConfig& c) {
  json j{{"k", c.k},
         {"t", c.t},
         {"alpha", c.alpha},
         {"n_samples", c.n_samples},
         {"out_h", c.out_h},
         {"out_w", c.out_w},
         {"seed", c.seed},
         {"sampling_mode", to_string(c.sampling_mode)},
         {"dilate_radius", c.dilate_radius},
         {"grid_size", c.grid_size},
         {"per_slice_crop", c.per_slice_crop}};
  if (c.n_c)
    j["n_c"] = *c.n_c;
  else
    j["n_c"] = nullptr;
  return j;
}

json manifest_json(const ScanAnalysis& a, const PipelineConfig& config,
                   const std::vector<std::string>& outputs) {
  json doc;
  doc["schema"] = 1;
  doc["scan_id"] = a.scan_id;
  doc["config"] = config_to_json(config);

  json files = json::array();
  for (const auto& f : a.files) files.push_back(f.filename().string());
  doc["source"] = {{"slices", static_cast<int>(a.files.size())},
                   {"height", a.height},
                   {"width", a.width},
                   {"files", files}};

  json spatial{{"crop", rect_to_json(a.union_crop)},
               {"per_slice", config.per_slice_crop},
               {"empty_mask_slices", a.empty_mask_slices},
               {"full_frame_fallback", a.all_masks_empty}};
  if (config.per_slice_crop) {
    json rects = json::array();
    for (const auto& r : a.slice_rects) rects.push_back(rect_to_json(r));
    spatial["slice_rects"] = rects;
  }
  doc["spatial"] = spatial;

  doc["areas"] = a.profile.areas;
  doc["window"] = {{"s", a.window.s},
                   {"e", a.window.e},
                   {"area_fraction", a.window.area_fraction},
                   {"relaxed", a.window.relaxed},
                   {"degenerate", a.degenerate}};

  json strata = json::array();
  for (const auto& [lo, hi] : a.selection.strata) strata.push_back(json::array({lo, hi}));
  doc["sampling"] = {{"mode", to_string(a.selection.mode)},
                     {"run_seed", config.seed},
                     {"scan_seed", a.scan_seed},
                     {"n_samples", config.n_samples},
                     {"bandwidth", a.density.bandwidth_h},
                     {"bandwidth_fallback", a.density.bandwidth_fallback},
                     {"uniform_weights", a.density.uniform_weights},
                     {"grid_size", static_cast<int>(a.density.grid.size())},
                     {"grid_refined", a.density.grid_refined},
                     {"strata", strata},
                     {"indices", a.selection.indices}};
  doc["outputs"] = outputs;
  return doc;
}

std::map<std::string, Label> load_labels(const fs::path& path) {
  std::map<std::string, Label> labels;
  for (const auto& [id, v] : metrics::read_id_value_file(path, /*want_label=*/true))
    labels[id] = v == 1.0 ? Label::kPositive : Label::kNegative;
  return labels;
}

}  // namespace

ScanAnalysis analyze_scan(const fs::path& scan_dir, const PipelineConfig& config) {
  ScanAnalysis a;
  a.scan_id = scan_dir.filename().string();
  a.scan_seed = derive_scan_seed(config.seed, a.scan_id);
  a.files = list_scan_files(scan_dir);

  const int n = static_cast<int>(a.files.size());
  std::vector<double> areas(n);
  a.slice_rects.resize(n);

  bool have_rect = false;
  for (int z = 0; z < n; ++z) {
    SliceImage img = read_image(a.files[z]);
    if (z == 0) {
      a.height = img.height;
      a.width = img.width;
    } else if (img.height != a.height || img.width != a.width) {
      throw Error("slice dimension mismatch in " + a.files[z].string());
    }
    const BinaryMask mask = segment(lowpass_filter(img, config.k), config.t);
    try {
      const CropRect rect = crop_rect(mask);
      a.slice_rects[z] = rect;
      a.union_crop = have_rect ? union_rect(a.union_crop, rect) : rect;
      have_rect = true;
    } catch (const EmptyMaskError&) {
      a.slice_rects[z] = full_frame(a.height, a.width);
      a.empty_mask_slices.push_back(z);
    }
    areas[z] = static_cast<double>(slice_area(mask, config.dilate_radius));
  }
  a.all_masks_empty = !have_rect;
  if (a.all_masks_empty) a.union_crop = full_frame(a.height, a.width);

  a.profile = AreaProfile::from(std::move(areas));
  try {
    a.window = select_window(a.profile, config.alpha, config.n_c);
  } catch (const DegenerateScanError&) {
    a.window = centered_window(n, config.n_c);
    a.degenerate = true;
  }

  switch (config.sampling_mode) {
    case SamplingMode::kKds:
      a.density = estimate_density(a.window, a.profile, config.grid_size);
      a.selection = sample(a.density, a.window, config.n_samples, a.scan_seed);
      break;
    case SamplingMode::kRandom:
      a.selection = sample_random(a.window, config.n_samples, a.scan_seed);
      break;
    case SamplingMode::kNone:
      a.selection.mode = SamplingMode::kNone;
      for (int i = a.window.s; i <= a.window.e; ++i) a.selection.indices.push_back(i);
      break;
  }
  return a;
}

namespace {

report::ReductionRecord process_scan(const fs::path& scan_dir, const fs::path& out_root,
                                     const PipelineConfig& config, Label label, bool quiet) {
  const auto t_start = Clock::now();
  ScanAnalysis a = analyze_scan(scan_dir, config);
  const double analyze_ms = ms_since(t_start);

  const fs::path staging = out_root / (".staging-" + a.scan_id);
  const fs::path final_dir = out_root / a.scan_id;
  fs::remove_all(staging);
  fs::create_directories(staging);

  std::vector<std::string> outputs;
  const auto t_write = Clock::now();
  try {
    for (int idx : a.selection.indices) {
      const CropRect& rect = config.per_slice_crop ? a.slice_rects[idx] : a.union_crop;
      const SliceImage out =
          resize_bilinear(apply_crop(read_image(a.files[idx]), rect), config.out_h, config.out_w);
      const std::string name = a.files[idx].stem().string() + ".png";
      write_png_gray8(out, staging / name);
      outputs.push_back(name);
    }
    std::ofstream manifest(staging / "manifest.json");
    manifest << manifest_json(a, config, outputs).dump(2) << "\n";
    if (!manifest) throw Error("cannot write manifest for " + a.scan_id);
    manifest.close();

    fs::remove_all(final_dir);
    fs::rename(staging, final_dir);
  } catch (...) {
    fs::remove_all(staging);
    throw;
  }
  const double write_ms = ms_since(t_write);

  double spatial_after = static_cast<double>(a.union_crop.area());
  if (config.per_slice_crop) {
    double sum = 0.0;
    for (const auto& r : a.slice_rects) sum += static_cast<double>(r.area());
    spatial_after = sum / static_cast<double>(a.slice_rects.size());
  }
  report::ReductionRecord rec = report::record_scan(
      a.scan_id, a.height, a.width, spatial_after, a.window, static_cast<int>(a.files.size()));
  rec.label = to_string(label);

  if (!quiet) {
    static std::mutex log_mutex;
    std::lock_guard<std::mutex> lock(log_mutex);
    std::cout << "scan=" << a.scan_id << " slices=" << a.files.size() << " window=["
              << a.window.s << "," << a.window.e << "]"
              << " sampled=" << a.selection.indices.size() << " analyze_ms=" << analyze_ms
              << " write_ms=" << write_ms << " total_ms=" << ms_since(t_start) << "\n";
  }
  return rec;
}

}  // namespace

RunResult run_pipeline(const fs::path& dataset_root, const fs::path& out_root,
                       const RunOptions& options) {
  options.config.validate();
  if (!fs::is_directory(dataset_root))
    throw Error("dataset root is not a directory: " + dataset_root.string());

  std::vector<fs::path> scan_dirs;
  for (const auto& entry : fs::directory_iterator(dataset_root))
    if (entry.is_directory()) scan_dirs.push_back(entry.path());
  std::sort(scan_dirs.begin(), scan_dirs.end());
  if (scan_dirs.empty()) throw Error("no scan directories under " + dataset_root.string());

  std::map<std::string, Label> labels;
  if (options.labels_csv) labels = load_labels(*options.labels_csv);

  fs::create_directories(out_root);

  RunResult result;
  result.outcomes.resize(scan_dirs.size());

  int jobs = options.jobs > 0 ? options.jobs
                              : static_cast<int>(std::thread::hardware_concurrency());
  jobs = std::clamp(jobs, 1, static_cast<int>(scan_dirs.size()));

  std::atomic<std::size_t> next{0};
  const auto worker = [&]() {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= scan_dirs.size()) return;
      ScanOutcome& outcome = result.outcomes[i];
      outcome.scan_id = scan_dirs[i].filename().string();
      const auto it = labels.find(outcome.scan_id);
      const Label label = it == labels.end() ? Label::kUnknown : it->second;
      try {
        outcome.record = process_scan(scan_dirs[i], out_root, options.config, label, options.quiet);
        outcome.ok = true;
      } catch (const std::exception& e) {
        outcome.error = e.what();
        std::cerr << "scan " << outcome.scan_id << " failed: " << e.what() << "\n";
      }
    }
  };

  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::thread> threads;
    threads.reserve(jobs);
    for (int i = 0; i < jobs; ++i) threads.emplace_back(worker);
    for (auto& t : threads) t.join();
  }

  std::vector<report::ReductionRecord> records;
  for (const auto& outcome : result.outcomes) {
    if (outcome.ok)
      records.push_back(outcome.record);
    else
      ++result.failed;
  }

  if (!records.empty()) {
    auto aggregates = report::aggregate(records, report::GroupBy::kTotal);
    if (!labels.empty()) {
      const auto by_label = report::aggregate(records, report::GroupBy::kLabel);
      aggregates.insert(aggregates.end(), by_label.begin(), by_label.end());
    }
    result.report_json = out_root / "report.json";
    result.report_text = out_root / "report.txt";
    std::ofstream(result.report_json) << report::render_json(records, aggregates);
    std::ofstream(result.report_text) << report::render_text(aggregates);
  }
  return result;
}

}  // namespace pipeline
}  // namespace ctslim
