#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "ctslim/image.hpp"

namespace ctslim {
namespace phantom {

// Synthetic slice stack: a bright body disk containing two dark lung
// ellipses whose axes follow a mid-stack-peaked sine profile. Lung areas are
// analytically known, which makes these stacks usable as ground truth.
struct PhantomSpec {
  int slices = 300;
  int height = 512;
  int width = 512;
  double body_radius_frac = 0.38;   // body disk radius / min(height, width)
  double lung_a_frac = 0.14;        // max column semi-axis / width
  double lung_b_frac = 0.21;        // max row semi-axis / height
  double lung_offset_frac = 0.18;   // lung center offset from body center / width
  double profile_power = 1.0;       // axes scale = sin(pi (z+0.5)/n)^power
  double noise = 8.0;               // uniform +/- intensity noise
  std::uint64_t seed = 0;
  double body_intensity = 200.0;
  double lung_intensity = 30.0;
  double background_intensity = 5.0;

  void validate() const;
};

struct PhantomTruth {
  std::string scan_id;
  std::vector<double> analytic_areas;      // 2*pi*a_z*b_z per slice, pixels^2
  std::vector<std::int64_t> raster_areas;  // exact generated lung pixel counts
  CropRect body_bbox;                      // raster bounding box of the body disk
  int height = 0;
  int width = 0;
};

// Renders one slice without touching the filesystem. Noise is seeded from
// (spec.seed, z), so slices can be rendered in any order.
SliceImage render_slice(const PhantomSpec& spec, int z);

// Writes `slice_0000.png`.. into scan_dir (created if missing) and returns
// the analytic ground truth.
PhantomTruth generate_phantom(const PhantomSpec& spec, const std::filesystem::path& scan_dir);

std::string truth_to_json(const PhantomTruth& truth, const PhantomSpec& spec);

}  // namespace phantom
}  // namespace ctslim
