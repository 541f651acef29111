#include "ctslim/spatial.hpp"

#include <algorithm>
#include <vector>

namespace ctslim {

SliceImage lowpass_filter(const SliceImage& img, int k) {
  if (k < 1) throw Error("filter half-window k must be >= 1");
  const int h = img.height, w = img.width;

  // Summed-area table in double: exact for integer-valued 8-bit intensities.
  std::vector<double> sat(static_cast<std::size_t>(h + 1) * (w + 1), 0.0);
  const auto sat_at = [&](int i, int j) -> double& {
    return sat[static_cast<std::size_t>(i) * (w + 1) + j];
  };
  for (int i = 0; i < h; ++i) {
    double row_sum = 0.0;
    for (int j = 0; j < w; ++j) {
      row_sum += img.at(i, j);
      sat_at(i + 1, j + 1) = sat_at(i, j + 1) + row_sum;
    }
  }

  SliceImage out(h, w);
  for (int i = 0; i < h; ++i) {
    const int r0 = std::max(0, i - k), r1 = std::min(h - 1, i + k);
    for (int j = 0; j < w; ++j) {
      const int c0 = std::max(0, j - k), c1 = std::min(w - 1, j + k);
      const double sum =
          sat_at(r1 + 1, c1 + 1) - sat_at(r0, c1 + 1) - sat_at(r1 + 1, c0) + sat_at(r0, c0);
      const int count = (r1 - r0 + 1) * (c1 - c0 + 1);
      out.at(i, j) = static_cast<float>(sum / count);
    }
  }
  return out;
}

BinaryMask segment(const SliceImage& filtered, double t) {
  BinaryMask mask(filtered.height, filtered.width);
  for (std::size_t i = 0; i < filtered.size(); ++i)
    mask.bits[i] = filtered.pixels[i] >= t ? 1 : 0;
  return mask;
}

CropRect crop_rect(const BinaryMask& mask) {
  int row_min = mask.height, row_max = -1, col_min = mask.width, col_max = -1;
  for (int i = 0; i < mask.height; ++i) {
    const std::uint8_t* row = mask.bits.data() + static_cast<std::size_t>(i) * mask.width;
    for (int j = 0; j < mask.width; ++j) {
      if (!row[j]) continue;
      row_min = std::min(row_min, i);
      row_max = std::max(row_max, i);
      col_min = std::min(col_min, j);
      col_max = std::max(col_max, j);
    }
  }
  if (row_max < 0) throw EmptyMaskError("crop_rect: mask has no set bits");
  return CropRect{row_min, row_max, col_min, col_max};
}

SliceImage apply_crop(const SliceImage& img, const CropRect& rect) {
  if (rect.row_min < 0 || rect.col_min < 0 || rect.row_max >= img.height ||
      rect.col_max >= img.width || rect.row_min > rect.row_max || rect.col_min > rect.col_max)
    throw Error("crop rect out of bounds");
  SliceImage out(rect.rows(), rect.cols());
  for (int i = 0; i < out.height; ++i) {
    const float* src = img.pixels.data() +
                       static_cast<std::size_t>(rect.row_min + i) * img.width + rect.col_min;
    std::copy(src, src + out.width, out.pixels.begin() + static_cast<std::size_t>(i) * out.width);
  }
  return out;
}

}  // namespace ctslim
