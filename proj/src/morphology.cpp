#include "ctslim/morphology.hpp"

#include <algorithm>
#include <vector>

namespace ctslim {

namespace {

// 1-D sliding-window "any set" pass along rows; runs once per axis to make
// the square dilation separable and O(pixels).
void dilate_rows(const std::uint8_t* in, std::uint8_t* out, int h, int w, int radius) {
  for (int i = 0; i < h; ++i) {
    const std::uint8_t* row = in + static_cast<std::size_t>(i) * w;
    std::uint8_t* dst = out + static_cast<std::size_t>(i) * w;
    int count = 0;
    for (int j = 0; j < std::min(w, radius); ++j) count += row[j] != 0;
    for (int j = 0; j < w; ++j) {
      if (j + radius < w) count += row[j + radius] != 0;
      dst[j] = count > 0 ? 1 : 0;
      if (j - radius >= 0) count -= row[j - radius] != 0;
    }
  }
}

}  // namespace

BinaryMask dilate(const BinaryMask& mask, int radius) {
  if (radius < 1) throw Error("dilation radius must be >= 1");
  const int h = mask.height, w = mask.width;
  BinaryMask horiz(h, w), out(h, w);
  dilate_rows(mask.bits.data(), horiz.bits.data(), h, w, radius);
  // Vertical pass: per-column sliding counts over the horizontal result.
  std::vector<int> count(w, 0);
  for (int i = 0; i < std::min(h, radius); ++i)
    for (int j = 0; j < w; ++j) count[j] += horiz.at(i, j) != 0;
  for (int i = 0; i < h; ++i) {
    if (i + radius < h)
      for (int j = 0; j < w; ++j) count[j] += horiz.at(i + radius, j) != 0;
    std::uint8_t* dst = out.bits.data() + static_cast<std::size_t>(i) * w;
    for (int j = 0; j < w; ++j) dst[j] = count[j] > 0 ? 1 : 0;
    if (i - radius >= 0)
      for (int j = 0; j < w; ++j) count[j] -= horiz.at(i - radius, j) != 0;
  }
  return out;
}

BinaryMask fill_holes(const BinaryMask& mask) {
  const int h = mask.height, w = mask.width;
  std::vector<std::uint8_t> outside(mask.bits.size(), 0);
  std::vector<int> stack;
  const auto push = [&](int i, int j) {
    const std::size_t idx = static_cast<std::size_t>(i) * w + j;
    if (!mask.bits[idx] && !outside[idx]) {
      outside[idx] = 1;
      stack.push_back(static_cast<int>(idx));
    }
  };
  for (int j = 0; j < w; ++j) {
    push(0, j);
    push(h - 1, j);
  }
  for (int i = 0; i < h; ++i) {
    push(i, 0);
    push(i, w - 1);
  }
  while (!stack.empty()) {
    const int idx = stack.back();
    stack.pop_back();
    const int i = idx / w, j = idx % w;
    if (i > 0) push(i - 1, j);
    if (i + 1 < h) push(i + 1, j);
    if (j > 0) push(i, j - 1);
    if (j + 1 < w) push(i, j + 1);
  }
  BinaryMask filled(h, w);
  for (std::size_t idx = 0; idx < filled.bits.size(); ++idx)
    filled.bits[idx] = outside[idx] ? 0 : 1;
  return filled;
}

std::int64_t slice_area(const BinaryMask& mask, int dilate_radius) {
  const BinaryMask dilated = dilate(mask, dilate_radius);
  const BinaryMask filled = fill_holes(dilated);
  std::int64_t area = 0;
  for (std::size_t i = 0; i < filled.bits.size(); ++i)
    area += filled.bits[i] && !dilated.bits[i];
  return area;
}

}  // namespace ctslim
