#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>

#include "ctslim/kde.hpp"

namespace ctslim {

// Knobs for the reduction pipeline. Defaults follow the reference settings
// k=5, t=100, alpha=0.5; the resize target matches the usual 384x384 model
// input.
struct PipelineConfig {
  int k = 5;                  // filter half-window, pixels
  double t = 100.0;           // segmentation threshold, intensity units
  double alpha = 0.5;         // area proportion the window must reach
  std::optional<int> n_c;     // max window length; absent = unconstrained
  int n_samples = 8;          // slices sampled per scan
  int out_h = 384;            // resize target
  int out_w = 384;
  std::uint64_t seed = 0;
  SamplingMode sampling_mode = SamplingMode::kKds;
  int dilate_radius = 3;      // closes chest-wall gaps before hole filling
  int grid_size = 100;        // KDE evaluation grid
  bool per_slice_crop = false;

  void validate() const;  // throws Error on an invalid combination
};

}  // namespace ctslim
