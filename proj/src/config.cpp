#include "ctslim/config.hpp"

namespace ctslim {

void PipelineConfig::validate() const {
  if (k < 1) throw Error("config: k must be >= 1");
  if (t < 0.0 || t > 255.0) throw Error("config: t must be in [0, 255]");
  if (alpha <= 0.0 || alpha > 1.0) throw Error("config: alpha must be in (0, 1]");
  if (n_c && *n_c < 1) throw Error("config: n_c must be >= 1");
  if (n_samples < 1) throw Error("config: n_samples must be >= 1");
  if (out_h < 1 || out_w < 1) throw Error("config: output size must be >= 1x1");
  if (dilate_radius < 1) throw Error("config: dilate_radius must be >= 1");
  if (grid_size < 16) throw Error("config: grid_size must be >= 16");
}

}  // namespace ctslim
