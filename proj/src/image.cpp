#include "ctslim/image.hpp"

#include <algorithm>
#include <cmath>

namespace ctslim {

SliceImage::SliceImage(int h, int w, float fill) : height(h), width(w) {
  if (h < 1 || w < 1) throw Error("SliceImage dimensions must be >= 1");
  pixels.assign(static_cast<std::size_t>(h) * w, fill);
}

SliceImage::SliceImage(int h, int w, std::vector<float> px) : height(h), width(w), pixels(std::move(px)) {
  if (h < 1 || w < 1) throw Error("SliceImage dimensions must be >= 1");
  if (pixels.size() != static_cast<std::size_t>(h) * w)
    throw Error("SliceImage pixel count does not match dimensions");
}

BinaryMask::BinaryMask(int h, int w, std::uint8_t fill) : height(h), width(w) {
  if (h < 1 || w < 1) throw Error("BinaryMask dimensions must be >= 1");
  bits.assign(static_cast<std::size_t>(h) * w, fill);
}

std::int64_t BinaryMask::count() const {
  std::int64_t n = 0;
  for (std::uint8_t b : bits) n += b != 0;
  return n;
}

CropRect full_frame(int height, int width) {
  return CropRect{0, height - 1, 0, width - 1};
}

CropRect union_rect(const CropRect& a, const CropRect& b) {
  return CropRect{std::min(a.row_min, b.row_min), std::max(a.row_max, b.row_max),
                  std::min(a.col_min, b.col_min), std::max(a.col_max, b.col_max)};
}

SliceImage resize_bilinear(const SliceImage& img, int out_h, int out_w) {
  if (out_h < 1 || out_w < 1) throw Error("resize target must be >= 1x1");
  SliceImage out(out_h, out_w);
  const auto src_coord = [](int o, int out_n, int in_n) -> double {
    if (out_n == 1) return (in_n - 1) / 2.0;
    return static_cast<double>(o) * (in_n - 1) / (out_n - 1);
  };
  for (int oy = 0; oy < out_h; ++oy) {
    const double sy = src_coord(oy, out_h, img.height);
    const int y0 = std::clamp(static_cast<int>(std::floor(sy)), 0, img.height - 1);
    const int y1 = std::min(y0 + 1, img.height - 1);
    const double fy = sy - y0;
    for (int ox = 0; ox < out_w; ++ox) {
      const double sx = src_coord(ox, out_w, img.width);
      const int x0 = std::clamp(static_cast<int>(std::floor(sx)), 0, img.width - 1);
      const int x1 = std::min(x0 + 1, img.width - 1);
      const double fx = sx - x0;
      const double top = (1.0 - fx) * img.at(y0, x0) + fx * img.at(y0, x1);
      const double bot = (1.0 - fx) * img.at(y1, x0) + fx * img.at(y1, x1);
      out.at(oy, ox) = quantize_u8((1.0 - fy) * top + fy * bot);
    }
  }
  return out;
}

}  // namespace ctslim
