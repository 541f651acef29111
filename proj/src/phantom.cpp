#include "ctslim/phantom.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>

#include <nlohmann/json.hpp>

#include "ctslim/codec.hpp"
#include "ctslim/rng.hpp"

namespace fs = std::filesystem;

namespace ctslim {
namespace phantom {

void PhantomSpec::validate() const {
  if (slices < 1 || height < 8 || width < 8) throw Error("phantom: bad stack dimensions");
  if (body_radius_frac <= 0.0 || body_radius_frac > 0.5) throw Error("phantom: bad body radius");
  if (lung_a_frac < 0.0 || lung_b_frac < 0.0) throw Error("phantom: lung axes must be >= 0");
  const double body_r = body_radius_frac * std::min(height, width);
  if ((lung_offset_frac + lung_a_frac) * width > body_r || lung_b_frac * height > body_r)
    throw Error("phantom: lungs do not fit inside the body disk");
  if (noise < 0.0) throw Error("phantom: noise must be >= 0");
}

namespace {

double axis_scale(const PhantomSpec& spec, int z) {
  const double phase = std::numbers::pi * (z + 0.5) / spec.slices;
  return std::pow(std::sin(phase), spec.profile_power);
}

struct SliceGeometry {
  double cy, cx, body_r2;
  double lung_cx_left, lung_cx_right;
  double a, b;  // ellipse semi-axes at this z (pixels)
};

SliceGeometry geometry(const PhantomSpec& spec, int z) {
  SliceGeometry g;
  g.cy = (spec.height - 1) / 2.0;
  g.cx = (spec.width - 1) / 2.0;
  const double body_r = spec.body_radius_frac * std::min(spec.height, spec.width);
  g.body_r2 = body_r * body_r;
  const double offset = spec.lung_offset_frac * spec.width;
  g.lung_cx_left = g.cx - offset;
  g.lung_cx_right = g.cx + offset;
  const double s = axis_scale(spec, z);
  g.a = spec.lung_a_frac * spec.width * s;
  g.b = spec.lung_b_frac * spec.height * s;
  return g;
}

bool in_lung(const SliceGeometry& g, double y, double x) {
  if (g.a <= 0.0 || g.b <= 0.0) return false;
  const double dy = (y - g.cy) / g.b;
  for (double cx : {g.lung_cx_left, g.lung_cx_right}) {
    const double dx = (x - cx) / g.a;
    if (dx * dx + dy * dy <= 1.0) return true;
  }
  return false;
}

}  // namespace

SliceImage render_slice(const PhantomSpec& spec, int z) {
  const SliceGeometry g = geometry(spec, z);
  Xoshiro256 rng(splitmix64_combine(spec.seed, static_cast<std::uint64_t>(z)));
  SliceImage img(spec.height, spec.width);
  for (int i = 0; i < spec.height; ++i) {
    for (int j = 0; j < spec.width; ++j) {
      const double dy = i - g.cy, dx = j - g.cx;
      double v = spec.background_intensity;
      if (dy * dy + dx * dx <= g.body_r2)
        v = in_lung(g, i, j) ? spec.lung_intensity : spec.body_intensity;
      if (spec.noise > 0.0) v += (2.0 * rng.uniform() - 1.0) * spec.noise;
      img.at(i, j) = quantize_u8(v);
    }
  }
  return img;
}

PhantomTruth generate_phantom(const PhantomSpec& spec, const fs::path& scan_dir) {
  spec.validate();
  fs::create_directories(scan_dir);

  PhantomTruth truth;
  truth.scan_id = scan_dir.filename().string();
  truth.height = spec.height;
  truth.width = spec.width;
  truth.analytic_areas.resize(spec.slices);
  truth.raster_areas.resize(spec.slices);

  // Raster bounding box of the body disk; identical on every slice.
  {
    const SliceGeometry g = geometry(spec, 0);
    int rmin = spec.height, rmax = -1, cmin = spec.width, cmax = -1;
    for (int i = 0; i < spec.height; ++i)
      for (int j = 0; j < spec.width; ++j) {
        const double dy = i - g.cy, dx = j - g.cx;
        if (dy * dy + dx * dx <= g.body_r2) {
          rmin = std::min(rmin, i);
          rmax = std::max(rmax, i);
          cmin = std::min(cmin, j);
          cmax = std::max(cmax, j);
        }
      }
    if (rmax < 0) throw Error("phantom: body disk rasterized to nothing");
    truth.body_bbox = CropRect{rmin, rmax, cmin, cmax};
  }

  for (int z = 0; z < spec.slices; ++z) {
    const SliceGeometry g = geometry(spec, z);
    truth.analytic_areas[z] = 2.0 * std::numbers::pi * g.a * g.b;

    std::int64_t raster = 0;
    if (g.a > 0.0 && g.b > 0.0) {
      for (int i = 0; i < spec.height; ++i)
        for (int j = 0; j < spec.width; ++j) raster += in_lung(g, i, j);
    }
    truth.raster_areas[z] = raster;

    char name[32];
    std::snprintf(name, sizeof(name), "slice_%04d.png", z);
    write_png_gray8(render_slice(spec, z), scan_dir / name);
  }
  return truth;
}

std::string truth_to_json(const PhantomTruth& truth, const PhantomSpec& spec) {
  nlohmann::json doc;
  doc["schema"] = 1;
  doc["scan_id"] = truth.scan_id;
  doc["height"] = truth.height;
  doc["width"] = truth.width;
  doc["body_bbox"] = {{"row_min", truth.body_bbox.row_min},
                      {"row_max", truth.body_bbox.row_max},
                      {"col_min", truth.body_bbox.col_min},
                      {"col_max", truth.body_bbox.col_max}};
  doc["analytic_areas"] = truth.analytic_areas;
  doc["raster_areas"] = truth.raster_areas;
  doc["spec"] = {{"slices", spec.slices},
                 {"height", spec.height},
                 {"width", spec.width},
                 {"body_radius_frac", spec.body_radius_frac},
                 {"lung_a_frac", spec.lung_a_frac},
                 {"lung_b_frac", spec.lung_b_frac},
                 {"lung_offset_frac", spec.lung_offset_frac},
                 {"profile_power", spec.profile_power},
                 {"noise", spec.noise},
                 {"seed", spec.seed}};
  return doc.dump(2) + "\n";
}

}  // namespace phantom
}  // namespace ctslim
