#pragma once

#include <filesystem>

#include "ctslim/image.hpp"

namespace ctslim {

// True for the extensions load_scan considers (.png/.jpg/.jpeg, any case).
bool is_supported_image(const std::filesystem::path& path);

// Decodes an 8-bit PNG or JPEG to a grayscale slice. RGB input is converted
// with the Rec. 601 weights; 16-bit PNG is rejected. Failures throw Error
// naming the file.
SliceImage read_image(const std::filesystem::path& path);

// Writes an 8-bit grayscale PNG. Pixels are clamped and rounded
// half-away-from-zero. Output bytes are deterministic for identical input.
void write_png_gray8(const SliceImage& img, const std::filesystem::path& path);

}  // namespace ctslim
