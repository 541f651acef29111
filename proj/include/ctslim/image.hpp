#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace ctslim {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// One 2-D grayscale slice. Intensities live in [0, 255] and are kept in
// floating point while processing; quantization to the 8-bit grid happens in
// resize_bilinear and on PNG write, with round-half-away-from-zero.
struct SliceImage {
  int height = 0;
  int width = 0;
  std::vector<float> pixels;  // row-major, height * width

  SliceImage() = default;
  SliceImage(int h, int w, float fill = 0.0f);
  SliceImage(int h, int w, std::vector<float> px);

  float at(int i, int j) const { return pixels[static_cast<std::size_t>(i) * width + j]; }
  float& at(int i, int j) { return pixels[static_cast<std::size_t>(i) * width + j]; }
  std::size_t size() const { return pixels.size(); }
};

struct BinaryMask {
  int height = 0;
  int width = 0;
  std::vector<std::uint8_t> bits;  // row-major, 0 or 1

  BinaryMask() = default;
  BinaryMask(int h, int w, std::uint8_t fill = 0);

  std::uint8_t at(int i, int j) const { return bits[static_cast<std::size_t>(i) * width + j]; }
  std::uint8_t& at(int i, int j) { return bits[static_cast<std::size_t>(i) * width + j]; }
  std::int64_t count() const;
};

// Axis-aligned inclusive bounding box.
struct CropRect {
  int row_min = 0;
  int row_max = 0;
  int col_min = 0;
  int col_max = 0;

  int rows() const { return row_max - row_min + 1; }
  int cols() const { return col_max - col_min + 1; }
  std::int64_t area() const { return static_cast<std::int64_t>(rows()) * cols(); }
  bool operator==(const CropRect&) const = default;
};

CropRect full_frame(int height, int width);
CropRect union_rect(const CropRect& a, const CropRect& b);

// Round-half-away-from-zero quantization to the 8-bit grid.
inline float quantize_u8(double v) {
  if (v <= 0.0) return 0.0f;
  if (v >= 255.0) return 255.0f;
  return static_cast<float>(static_cast<int>(v + 0.5));
}

// Rec. 601 luminance. Integer numerator keeps gray triples (v,v,v) exact.
inline float luminance_rec601(std::uint8_t r, std::uint8_t g, std::uint8_t b) {
  return static_cast<float>((299 * int(r) + 587 * int(g) + 114 * int(b)) / 1000.0);
}

// Corner-aligned bilinear resize; a 1-wide output axis samples the input
// midpoint. Output values are quantized to the 8-bit grid.
SliceImage resize_bilinear(const SliceImage& img, int out_h, int out_w);

}  // namespace ctslim
